//! Exact arithmetic: prime-power finite fields, the residue rings `O_K / ϖ^n`,
//! sparse multivariate polynomials and the cyclotomic field `Q(ζ_m)`.

mod cyclotomic;
mod finite_field;
mod params;
mod poly;
mod residue;

pub use cyclotomic::{CyclotomicElem, CyclotomicField};
pub use finite_field::{FieldElem, FiniteField};
pub use params::Params;
pub use poly::Poly;
pub use residue::{ResidueRing, ResidueRingElem, RingModel};

use std::fmt::Debug;
use std::hash::Hash;

/// Commutative ring with `Copy` element handles. Elements only make sense
/// together with the descriptor that produced them.
pub trait Ring {
    type Elem: Copy + Eq + Ord + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn pow(&self, a: Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of an integer under `Z -> R`.
    fn from_int(&self, n: i64) -> Self::Elem {
        let mut acc = self.zero();
        let mut base = if n < 0 { self.neg(self.one()) } else { self.one() };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }
}

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
}

impl Field for FiniteField {
    fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        FiniteField::inv(self, a)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}
