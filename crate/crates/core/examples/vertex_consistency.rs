//! Read `ϖ Ṽ(u)` on the adjacent vertex and compare with the vertex class.

use drinfeld_cover::base_rings::Params;
use drinfeld_cover::building::{standard_simplex, SimplexType};
use drinfeld_cover::divisor::kummer_class_sigma1;
use drinfeld_cover::hyperplanes::HyperplaneSet;
use drinfeld_cover::simplex_units::{restrict_to_vertex, ui_family, vtilde_invariant, SymbolUnit};

fn main() -> drinfeld_cover::Result<()> {
    for (p, f, d) in [(3, 1, 1), (2, 2, 1), (3, 1, 2)] {
        let params = Params::unramified(p, f, d)?;
        let pres = standard_simplex(params, &SimplexType::maximal(d))?;
        let set = HyperplaneSet::shared(params, 1)?;
        let s = SymbolUnit::uniformizer_power(1).mul(&vtilde_invariant(&ui_family(&pres)?));
        let (pi, divisor) = restrict_to_vertex(&pres, &set, &s)?;
        let n = params.galois_order();
        let restricted = divisor.reduce_mod(n)?;
        let vertex = kummer_class_sigma1(&set);
        println!(
            "q={} d={d}: pi^{} with {:?} mod {n}; matches vertex class: {}",
            params.q(),
            pi.rem_euclid(n as i64),
            restricted.reduced_coeffs(),
            pi.rem_euclid(n as i64) == vertex.pi_exponent() && restricted == *vertex.divisor()
        );
    }
    Ok(())
}
