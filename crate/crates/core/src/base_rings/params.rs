use serde::{Deserialize, Serialize};

use super::{is_prime, ResidueRing};
use crate::error::{Error, Result};

/// Numerical data of a local field `K` together with a dimension `d`.
///
/// `p` is the residue characteristic, `f` the residue degree, `e` the
/// ramification index. Only `q = p^f` and `e` influence the finite-level
/// computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub p: u32,
    pub f: u32,
    pub e: u32,
    pub d: u32,
}

impl Params {
    pub fn new(p: u32, f: u32, e: u32, d: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidParams(format!("p = {p} is not prime")));
        }
        if f == 0 || e == 0 || d == 0 {
            return Err(Error::InvalidParams("f, e and d must be positive".into()));
        }
        // keeps q^{d+1} and all exponent arithmetic comfortably inside i64
        let bits = (f as f64) * (d as f64 + 1.0) * (p as f64).log2();
        if bits > 40.0 {
            return Err(Error::InvalidParams(format!(
                "q^(d+1) = {p}^{} is too large",
                f * (d + 1)
            )));
        }
        Ok(Params { p, f, e, d })
    }

    /// Shorthand for the unramified case `e = 1`.
    pub fn unramified(p: u32, f: u32, d: u32) -> Result<Self> {
        Self::new(p, f, 1, d)
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.f)
    }

    /// `N = q^{d+1} - 1`, the degree of the first covering.
    pub fn galois_order(&self) -> u64 {
        self.q().pow(self.d + 1) - 1
    }

    /// `N / (q - 1) = 1 + q + ... + q^d`, the number of points of `P^d(F_q)`.
    pub fn component_degree(&self) -> u64 {
        self.galois_order() / (self.q() - 1)
    }

    pub fn residue_ring(&self, level: u32) -> Result<ResidueRing> {
        ResidueRing::new(self.p, self.f, self.e, level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn derived_quantities() {
        for (p, f, d) in [(2, 1, 1), (3, 1, 1), (2, 2, 1), (2, 1, 2), (3, 1, 2), (5, 1, 3)] {
            let params = Params::unramified(p, f, d).unwrap();
            let n = params.galois_order();
            assert_eq!(n, (params.q() - 1) * params.component_degree());
            assert_eq!(n.gcd(&(p as u64)), 1);
        }
        assert_eq!(Params::unramified(3, 1, 2).unwrap().component_degree(), 13);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Params::new(4, 1, 1, 1).is_err());
        assert!(Params::new(2, 0, 1, 1).is_err());
        assert!(Params::new(2, 1, 1, 0).is_err());
        assert!(Params::new(2, 30, 1, 5).is_err());
    }
}
