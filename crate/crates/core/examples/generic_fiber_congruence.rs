//! Compare the class aggregated over `P^d(O/ϖ^2)` with `ϖ Ṽ(u)` modulo `N`.

use drinfeld_cover::base_rings::Params;
use drinfeld_cover::building::{standard_simplex, SimplexType};
use drinfeld_cover::simplex_units::{generic_fiber_class, ui_family, verify_generic_fiber_congruence, vtilde_invariant, SymbolUnit};

fn main() -> drinfeld_cover::Result<()> {
    for (p, d) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        let params = Params::unramified(p, 1, d)?;
        let pres = standard_simplex(params, &SimplexType::maximal(d))?;
        let name = |s| pres.symbol_name(s);
        let class = generic_fiber_class(&pres)?;
        let target = SymbolUnit::uniformizer_power(1).mul(&vtilde_invariant(&ui_family(&pres)?));
        let report = verify_generic_fiber_congruence(&pres)?;
        println!("q={p} d={d}, N={}", params.galois_order());
        println!("  aggregated: {}", class.unit.format(name));
        println!("  pi Vtilde(u): {}", target.format(name));
        println!("  x exponents mod N: {:?}; congruent: {}", report.x_exponents, report.ok);
    }
    Ok(())
}
