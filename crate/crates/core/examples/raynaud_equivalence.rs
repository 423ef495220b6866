//! Decide equivalence of Raynaud data through `V` and recover the witness.

use drinfeld_cover::base_rings::Params;
use drinfeld_cover::building::{standard_simplex, SimplexType};
use drinfeld_cover::simplex_units::{
    solve_witness, ui_family, v_invariant, verify_global_section, RaynaudDatum, Symbol, SymbolUnit,
};

fn main() -> drinfeld_cover::Result<()> {
    let params = Params::unramified(2, 1, 2)?;
    let pres = standard_simplex(params, &SimplexType::maximal(2))?;
    let name = |s| pres.symbol_name(s);
    let u = ui_family(&pres)?;
    for (i, ui) in u.units().iter().enumerate() {
        println!("u_{i} = {}", ui.format(name));
    }
    println!("V(u) = {}", v_invariant(&u).format(name));
    let global = verify_global_section(&pres)?;
    println!("prod u_i x_(d-i) = {}", global.product.format(name));

    let w = vec![
        SymbolUnit::symbol(Symbol::X(0)),
        SymbolUnit::symbol_power(Symbol::P { block: 1, rep: 0 }, 2),
        SymbolUnit::uniformizer_power(1),
    ];
    let twisted = u.twist(&w);
    match solve_witness(&u, &twisted) {
        Some(found) => {
            let shown: Vec<String> = found.iter().map(|x| x.format(name)).collect();
            println!("twist recognised, witness [{}]", shown.join(", "));
        }
        None => println!("twist not recognised"),
    }

    let mut units = twisted.units().to_vec();
    units[0] = units[0].mul(&SymbolUnit::symbol(Symbol::X(1)));
    let perturbed = RaynaudDatum::new(params, units)?;
    println!("perturbed datum equivalent: {}", solve_witness(&u, &perturbed).is_some());
    Ok(())
}
