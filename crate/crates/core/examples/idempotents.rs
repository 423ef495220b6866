//! Lagrange idempotents on `μ_{q-1}` and canonical forms `t^j v` of units.

use drinfeld_cover::base_rings::Params;
use drinfeld_cover::idempotents::{idempotent_report, lagrange, ComponentRing};

fn main() -> drinfeld_cover::Result<()> {
    for q in [3, 4, 5] {
        for a in 0..q - 1 {
            println!("q={q}: L_(zeta^{a}) = {}", lagrange(q, a).format());
        }
        println!("q={q}: {:?}", idempotent_report(q));
    }

    let ring = ComponentRing::new(Params::unramified(3, 1, 1)?, 0)?;
    let t = ring.t();
    let t5 = ring.pow(&t, 5)?;
    println!("t^5 = {}", ring.to_json(&t5));
    let v = ring.unit_model(1, vec![2, -1, 0, -1])?;
    let x = ring.mul(&ring.pow(&t, 3)?, &ring.from_unit(v))?;
    if let Some(div) = &ring.expand(&x)[0] {
        let coeffs: Vec<String> = div.coeffs.iter().map(|c| c.to_string()).collect();
        println!("x = t^3 v has divisor pi^{} * [{}] on each component", div.pi, coeffs.join(", "));
    }
    println!("recovered from its divisor: {}", ring.decompose(&ring.expand(&x))? == x);
    println!("x * x^-1 = identity: {}", ring.mul(&x, &ring.inv(&x)?)? == ring.identity());
    Ok(())
}
