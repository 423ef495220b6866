//! Arithmetic in the three residue-ring models and Teichmüller lifts.

use drinfeld_cover::base_rings::{ResidueRing, Ring};

fn main() -> drinfeld_cover::Result<()> {
    for (p, f, e, n) in [(3, 1, 1, 2), (2, 2, 1, 2), (2, 1, 3, 3)] {
        let ring = ResidueRing::new(p, f, e, n)?;
        println!("p={p} f={f} e={e} level {n}: {:?}, {} elements, {} units", ring.model(), ring.size(), ring.unit_count());
        let lifts: Vec<String> = ring.teichmuller_lifts().iter().map(|&x| ring.format(x)).collect();
        println!("  Teichmüller lifts: {}", lifts.join(", "));
        let pi = ring.uniformizer();
        let x = ring.add(ring.one(), pi);
        let inv = ring.inv(x).expect("1 + pi is a unit");
        println!("  (1 + pi)^-1 = {}, check {}", ring.format(inv), ring.format(ring.mul(x, inv)));
        println!("  valuation of pi^{} = {}", n - 1, ring.valuation(ring.pow(pi, n as u64 - 1)));
    }
    Ok(())
}
