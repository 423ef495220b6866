//! The Kummer class of the first covering, its invariance and the count of
//! geometric components.

use drinfeld_cover::base_rings::Params;
use drinfeld_cover::divisor::{invariant_class_enumeration, is_invariant, kummer_class_sigma1, pi0, ScalarField};
use drinfeld_cover::hyperplanes::{random_gl_family, HyperplaneSet};

fn main() -> drinfeld_cover::Result<()> {
    let params = Params::unramified(3, 1, 1)?;
    let set = HyperplaneSet::shared(params, 2)?;
    let class = kummer_class_sigma1(&set);
    println!("{}", serde_json::to_string_pretty(&class.to_json()).expect("serializable"));

    let group = random_gl_family(params, 2, 1, 100)?;
    println!("fixed by 100 random elements of GL_2(Z/9): {}", is_invariant(&class, &group)?);

    let e = invariant_class_enumeration(params, 2)?;
    println!("invariant classes mod {}: {} solutions, cyclic on {:?}: {}", e.modulus, e.solutions.len(), e.generator, e.cyclic);

    println!("components over C: {}", pi0(&class, ScalarField::C));
    println!("components over K_breve: {}", pi0(&class, ScalarField::KBreve));
    Ok(())
}
