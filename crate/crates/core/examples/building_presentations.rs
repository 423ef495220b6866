//! Charts of the tube over standard simplices and the Raynaud presentation
//! of the first covering over a maximal simplex.

use drinfeld_cover::base_rings::Params;
use drinfeld_cover::building::{standard_simplex, covering_presentation, SimplexType};

fn main() -> drinfeld_cover::Result<()> {
    let params = Params::unramified(3, 1, 1)?;
    let vertex = standard_simplex(params, &SimplexType::vertex(1))?;
    println!("{}", vertex.to_text());

    let edge = standard_simplex(params, &SimplexType::maximal(1))?;
    println!("{}", edge.to_text());
    println!("{}", covering_presentation(&edge)?.to_text(&edge));

    let params = Params::unramified(2, 1, 2)?;
    let mixed = standard_simplex(params, &SimplexType::new(2, vec![1, 2])?)?;
    println!("{}", mixed.to_text());
    Ok(())
}
