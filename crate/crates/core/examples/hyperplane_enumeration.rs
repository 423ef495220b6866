//! Enumerate `H_n`, walk the fibers of `H_2 -> H_1` and act by a random
//! element of `GL_{d+1}(O/ϖ^n)`.

use drinfeld_cover::base_rings::Params;
use drinfeld_cover::hyperplanes::{random_gl, HyperplaneSet};

fn main() -> drinfeld_cover::Result<()> {
    let params = Params::unramified(2, 1, 1)?;
    let h1 = HyperplaneSet::new(params, 1)?;
    let h2 = HyperplaneSet::new(params, 2)?;
    println!("|H_1| = {}, |H_2| = {}", h1.len(), h2.len());
    for (i, fiber) in h1.fibers(&h2)?.iter().enumerate() {
        let above: Vec<String> = fiber.iter().map(|&j| format!("{:?}", h2.class(j).to_strings(h2.ring()))).collect();
        println!("  {:?} <- {}", h1.class(i).to_strings(h1.ring()), above.join(" "));
    }

    let g = random_gl(params, 2, 11)?;
    println!("a random g in GL_2(Z/4) permutes H_2 as {:?}", h2.permutation(&g)?);

    let big = Params::unramified(3, 1, 2)?;
    for n in 1..=2 {
        println!("q=3 d=2: |H_{n}| = {}", HyperplaneSet::new(big, n)?.len());
    }
    Ok(())
}
