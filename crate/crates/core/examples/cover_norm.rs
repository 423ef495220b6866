//! Norms and valuations on the special-fiber cover ring `F[X][1/P][t]/(t^Ñ - P)`.

use drinfeld_cover::base_rings::Params;
use drinfeld_cover::cover::{check_norm_one_is_root_of_unity, CoverAlgebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> drinfeld_cover::Result<()> {
    let algebra = CoverAlgebra::new(Params::unramified(3, 1, 1)?)?;
    let names = algebra.variable_names();
    let show = |f| algebra.format_frac(f);
    println!("Ñ = {}, P = {}", algebra.degree(), algebra.p_poly().format(&names, |c| algebra.field().format(c)));
    println!("Nrm(t) = {}", show(&algebra.norm(&algebra.t())));

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let x = algebra.random_element(&mut rng);
    let by_det = algebra.norm(&x);
    println!("random element: determinant norm equals conjugate product: {}", by_det == algebra.norm_by_conjugates(&x));
    for k in 0..algebra.forms().len() {
        println!("  v_H{k}(x) = {}, v_H{k}(Nrm x) = {}", algebra.v_h(&x, k)?, algebra.frac_v_h(&by_det, k)?);
    }
    println!("  v_inf(x) = {}", algebra.v_inf(&x)?);

    let report = check_norm_one_is_root_of_unity(&algebra, 30, 9)?;
    println!("{report:#?}");
    Ok(())
}
