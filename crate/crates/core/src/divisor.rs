//! Exponent vectors on `H_n`: invertible functions on the Drinfeld space
//! modulo constants, and `μ_N`-torsor classes as `(ϖ-exponent, vector mod N)`.

use std::sync::Arc;

use num_integer::Integer;
use serde_json::{json, Value};

use crate::base_rings::Params;
use crate::error::{Error, Result};
use crate::hyperplanes::{HyperplaneSet, Matrix};

impl HyperplaneSet {
    pub fn shared(params: Params, level: u32) -> Result<Arc<HyperplaneSet>> {
        Ok(Arc::new(HyperplaneSet::new(params, level)?))
    }
}

/// Element of `Z[H_n]^0` (modulus 0) or of `Z/m[H_n]^0`. Coefficients are
/// kept as exact integers and only reduced when compared.
#[derive(Debug, Clone)]
pub struct DivisorVector {
    set: Arc<HyperplaneSet>,
    modulus: u64,
    coeffs: Vec<i64>,
}

fn reduce(c: i64, m: u64) -> i64 {
    if m == 0 {
        c
    } else {
        c.rem_euclid(m as i64)
    }
}

impl DivisorVector {
    pub fn new(set: Arc<HyperplaneSet>, modulus: u64, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != set.len() {
            return Err(Error::InvalidParams(format!(
                "expected {} coefficients, got {}",
                set.len(),
                coeffs.len()
            )));
        }
        let v = DivisorVector { set, modulus, coeffs };
        if reduce(v.degree(), modulus) != 0 {
            return Err(Error::NotDegreeZero(modulus));
        }
        Ok(v)
    }

    pub fn zero(set: Arc<HyperplaneSet>, modulus: u64) -> Self {
        let coeffs = vec![0; set.len()];
        DivisorVector { set, modulus, coeffs }
    }

    /// The same coefficient at every hyperplane.
    pub fn constant(set: Arc<HyperplaneSet>, modulus: u64, c: i64) -> Result<Self> {
        let coeffs = vec![c; set.len()];
        Self::new(set, modulus, coeffs)
    }

    pub fn set(&self) -> &Arc<HyperplaneSet> {
        &self.set
    }

    pub fn level(&self) -> u32 {
        self.set.level()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    /// Coefficients in `[0, m)`, or the raw integers when integral.
    pub fn reduced_coeffs(&self) -> Vec<i64> {
        self.coeffs.iter().map(|&c| reduce(c, self.modulus)).collect()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    fn check_compatible(&self, other: &DivisorVector) -> Result<()> {
        if self.level() != other.level() || !Arc::ptr_eq(&self.set, &other.set) && self.set.params() != other.set.params() {
            return Err(Error::LevelMismatch(self.level(), other.level()));
        }
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    /// Group law (product of the corresponding functions).
    pub fn add(&self, other: &DivisorVector) -> Result<DivisorVector> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(DivisorVector { set: self.set.clone(), modulus: self.modulus, coeffs })
    }

    pub fn neg(&self) -> DivisorVector {
        DivisorVector { set: self.set.clone(), modulus: self.modulus, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &DivisorVector) -> Result<DivisorVector> {
        self.add(&other.neg())
    }

    /// `k`-th power of the corresponding function.
    pub fn scale(&self, k: i64) -> DivisorVector {
        let coeffs = self.coeffs.iter().map(|&c| reduce(c * k, self.modulus)).collect();
        DivisorVector { set: self.set.clone(), modulus: self.modulus, coeffs }
    }

    /// `k`-th power, read modulo `k·m`: well defined since the vector is
    /// only known modulo `m`.
    pub fn pow_lifted(&self, k: u64) -> DivisorVector {
        let modulus = self.modulus * k;
        let coeffs = self.reduced_coeffs().iter().map(|&c| reduce(c * k as i64, modulus)).collect();
        DivisorVector { set: self.set.clone(), modulus, coeffs }
    }

    /// Image modulo `m`, for `m` dividing the current modulus (or any `m`
    /// when integral).
    pub fn reduce_mod(&self, m: u64) -> Result<DivisorVector> {
        if m == 0 && self.modulus != 0 || self.modulus != 0 && self.modulus % m != 0 {
            return Err(Error::ModulusMismatch(self.modulus, m));
        }
        let coeffs = self.coeffs.iter().map(|&c| reduce(c, m)).collect();
        Ok(DivisorVector { set: self.set.clone(), modulus: m, coeffs })
    }

    /// Transition map `Z[H_{n+1}] -> Z[H_n]`: sums over fibers.
    pub fn pushforward(&self, lower: &Arc<HyperplaneSet>) -> Result<DivisorVector> {
        if lower.level() + 1 != self.level() || lower.params() != self.set.params() {
            return Err(Error::LevelMismatch(self.level(), lower.level()));
        }
        let fibers = lower.fibers(&self.set)?;
        let coeffs = fibers.iter().map(|f| reduce(f.iter().map(|&j| self.coeffs[j]).sum(), self.modulus)).collect();
        Ok(DivisorVector { set: lower.clone(), modulus: self.modulus, coeffs })
    }

    /// Transport along `g`: the coefficient of `H` moves to `g·H`.
    pub fn act(&self, g: &Matrix) -> Result<DivisorVector> {
        if g.level() != self.level() {
            return Err(Error::LevelMismatch(g.level(), self.level()));
        }
        let perm = self.set.permutation(g)?;
        let mut coeffs = vec![0; self.coeffs.len()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[perm[i]] = c;
        }
        Ok(DivisorVector { set: self.set.clone(), modulus: self.modulus, coeffs })
    }

    /// Exponents of `l_H / l_{H_0}` for `H ≠ H_0`; a degree-zero vector is
    /// determined by these.
    pub fn relative_to(&self, base: usize) -> Vec<(usize, i64)> {
        self.reduced_coeffs().into_iter().enumerate().filter(|&(i, c)| i != base && c != 0).collect()
    }

    pub fn coefficients_json(&self) -> Vec<Value> {
        let ring = self.set.ring();
        self.reduced_coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| json!([self.set.class(i).to_strings(ring), c.to_string()]))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level().to_string(),
            "modulus": self.modulus.to_string(),
            "coefficients": self.coefficients_json(),
        })
    }
}

impl PartialEq for DivisorVector {
    fn eq(&self, other: &Self) -> bool {
        self.check_compatible(other).is_ok() && self.reduced_coeffs() == other.reduced_coeffs()
    }
}

/// Class in `H^1(H^d, μ_N) = ϖ^{Z/N} × Z/N[H_n]^0` at a finite level.
#[derive(Debug, Clone)]
pub struct KummerClass {
    pi: i64,
    divisor: DivisorVector,
}

impl KummerClass {
    pub fn new(pi: i64, divisor: DivisorVector) -> Result<Self> {
        let n = divisor.set.params().galois_order();
        if divisor.modulus != n {
            return Err(Error::ModulusMismatch(divisor.modulus, n));
        }
        Ok(KummerClass { pi: reduce(pi, n), divisor })
    }

    pub fn modulus(&self) -> u64 {
        self.divisor.modulus
    }

    pub fn pi_exponent(&self) -> i64 {
        self.pi
    }

    pub fn divisor(&self) -> &DivisorVector {
        &self.divisor
    }

    pub fn level(&self) -> u32 {
        self.divisor.level()
    }

    pub fn mul(&self, other: &KummerClass) -> Result<KummerClass> {
        KummerClass::new(self.pi + other.pi, self.divisor.add(&other.divisor)?)
    }

    pub fn pow(&self, k: i64) -> KummerClass {
        KummerClass { pi: reduce(self.pi * k, self.modulus()), divisor: self.divisor.scale(k) }
    }

    pub fn act(&self, g: &Matrix) -> Result<KummerClass> {
        Ok(KummerClass { pi: self.pi, divisor: self.divisor.act(g)? })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level().to_string(),
            "modulus": self.modulus().to_string(),
            "pi_exponent": self.pi.to_string(),
            "coefficients": self.divisor.coefficients_json(),
        })
    }
}

impl PartialEq for KummerClass {
    fn eq(&self, other: &Self) -> bool {
        self.pi == other.pi && self.divisor == other.divisor
    }
}

/// The generator `u_n = ∏_{H ∈ H_n} l_H^{q^{n-1}}` of the invariant classes,
/// as a vector modulo `Ñ`.
pub fn canonical_generator(set: &Arc<HyperplaneSet>) -> DivisorVector {
    let params = set.params();
    let nt = params.component_degree();
    let c = mod_pow(params.q(), set.level() as u64 - 1, nt) as i64;
    DivisorVector::constant(set.clone(), nt, c).expect("|H_n| q^{n-1} is divisible by Ñ")
}

/// Class of the first covering restricted to the level-`n` tube:
/// `ϖ · u_{n+1}^{q-1}` modulo `N`. `set` is `H_{n+1}`.
pub fn kummer_class_sigma1(set: &Arc<HyperplaneSet>) -> KummerClass {
    let q = set.params().q();
    KummerClass::new(1, canonical_generator(set).pow_lifted(q - 1)).expect("modulus is N")
}

pub(crate) fn mod_pow(base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut b, mut acc) = (base % m, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// `true` iff every `g` fixes the class.
pub fn is_invariant(class: &KummerClass, group: &[Matrix]) -> Result<bool> {
    for g in group {
        if class.act(g)? != *class {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of exhausting the constant-coefficient invariant sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantEnumeration {
    pub modulus: u64,
    pub n_max: u32,
    /// All `(α_1, ..., α_{n_max})` with `α_n = q^d α_{n+1}` and `|H_n| α_n ≡ 0`.
    pub solutions: Vec<Vec<u64>>,
    /// `α_n = (q-1) q^{n-1}`.
    pub generator: Vec<u64>,
    /// Whether the solutions are exactly the multiples of the generator.
    pub cyclic: bool,
}

pub fn invariant_class_enumeration(params: Params, n_max: u32) -> Result<InvariantEnumeration> {
    if n_max == 0 {
        return Err(Error::InvalidParams("n_max must be at least 1".into()));
    }
    let n = params.galois_order();
    let q = params.q();
    let qd = mod_pow(q, params.d as u64, n);
    let sizes: Vec<u64> = (1..=n_max)
        .map(|k| params.component_degree() % n * mod_pow(q, (k as u64 - 1) * params.d as u64, n) % n)
        .collect();
    let total = n.checked_pow(n_max).filter(|&t| t <= 50_000_000).ok_or_else(|| {
        Error::InvalidParams(format!("(Z/{n})^{n_max} is too large to exhaust"))
    })?;
    let mut solutions = Vec::new();
    for code in 0..total {
        let alpha: Vec<u64> = (0..n_max).map(|k| code / n.pow(k) % n).collect();
        let degree_zero = alpha.iter().zip(&sizes).all(|(a, s)| a * s % n == 0);
        let compatible = (0..n_max as usize - 1).all(|k| alpha[k] == qd * alpha[k + 1] % n);
        if degree_zero && compatible {
            solutions.push(alpha);
        }
    }
    solutions.sort();
    let generator: Vec<u64> = (1..=n_max).map(|k| (q - 1) * mod_pow(q, k as u64 - 1, n) % n).collect();
    let mut generated: Vec<Vec<u64>> =
        (0..n).map(|k| generator.iter().map(|g| g * k % n).collect()).collect();
    generated.sort();
    generated.dedup();
    let cyclic = generated == solutions;
    Ok(InvariantEnumeration { modulus: n, n_max, solutions, generator, cyclic })
}

/// Scalars over which components are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarField {
    /// Algebraically closed: every constant, `ϖ` included, is an `N`-th power.
    C,
    /// Completed maximal unramified extension: `ϖ` is not a power.
    KBreve,
}

/// Number of connected components of the Kummer cover: the largest `m | N`
/// for which the defining unit is an `m`-th power.
pub fn pi0(class: &KummerClass, scalars: ScalarField) -> u64 {
    let n = class.modulus();
    let mut g = class.divisor.reduced_coeffs().iter().fold(n, |acc, &c| acc.gcd(&(c as u64)));
    if scalars == ScalarField::KBreve {
        g = g.gcd(&(class.pi as u64));
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(p: u32, f: u32, d: u32, n: u32) -> Arc<HyperplaneSet> {
        HyperplaneSet::shared(Params::unramified(p, f, d).unwrap(), n).unwrap()
    }

    #[test]
    fn canonical_generator_values() {
        let g = canonical_generator(&set(3, 1, 1, 1));
        assert_eq!((g.modulus(), g.reduced_coeffs()), (4, vec![1; 4]));
        let g = canonical_generator(&set(2, 1, 1, 2));
        assert_eq!((g.modulus(), g.reduced_coeffs()), (3, vec![2; 6]));
        assert_eq!(g.degree(), 12);
        let g = canonical_generator(&set(2, 1, 2, 1));
        assert_eq!((g.modulus(), g.reduced_coeffs()), (7, vec![1; 7]));
        let u = canonical_generator(&set(3, 1, 1, 1)).pow_lifted(2);
        assert_eq!((u.modulus(), u.reduced_coeffs()), (8, vec![2; 4]));
    }

    #[test]
    fn group_law() {
        let s = set(3, 1, 1, 1);
        let v = DivisorVector::new(s.clone(), 0, vec![1, -2, 0, 1]).unwrap();
        assert_eq!(v.add(&v.neg()).unwrap(), DivisorVector::zero(s.clone(), 0));
        let w = DivisorVector::new(s.clone(), 8, vec![1, 7, 3, 5]).unwrap();
        assert_eq!(w.scale(8), DivisorVector::zero(s.clone(), 8));
        assert_eq!(DivisorVector::new(s.clone(), 0, vec![1, 0, 0, 0]).unwrap_err(), Error::NotDegreeZero(0));
        assert_eq!(v.add(&w).unwrap_err(), Error::ModulusMismatch(0, 8));
        let other = DivisorVector::zero(set(3, 1, 1, 2), 0);
        assert!(matches!(v.add(&other), Err(Error::LevelMismatch(1, 2))));
    }

    #[test]
    fn pushforward_of_canonical_generator() {
        for (p, d) in [(2, 1), (3, 1)] {
            let (s1, s2) = (set(p, 1, d, 1), set(p, 1, d, 2));
            assert_eq!(canonical_generator(&s2).pushforward(&s1).unwrap(), canonical_generator(&s1));
            let z = DivisorVector::zero(s2.clone(), 0);
            assert_eq!(z.pushforward(&s1).unwrap(), DivisorVector::zero(s1.clone(), 0));
        }
    }

    #[test]
    fn sigma1_class_and_components() {
        let s = set(3, 1, 1, 1);
        let k = kummer_class_sigma1(&s);
        assert_eq!((k.pi_exponent(), k.modulus(), k.divisor().reduced_coeffs()), (1, 8, vec![2; 4]));
        assert_eq!(pi0(&k, ScalarField::C), 2);
        assert_eq!(pi0(&k, ScalarField::KBreve), 1);
        let trivial = KummerClass::new(0, DivisorVector::zero(s.clone(), 8)).unwrap();
        assert_eq!(pi0(&trivial, ScalarField::C), 8);
        let k2 = kummer_class_sigma1(&set(2, 1, 1, 1));
        assert_eq!(k2.divisor().reduced_coeffs(), vec![1; 3]);
    }

    #[test]
    fn invariance_and_its_failure() {
        let params = Params::unramified(3, 1, 1).unwrap();
        let s = set(3, 1, 1, 1);
        let k = kummer_class_sigma1(&s);
        let group = crate::hyperplanes::random_gl_family(params, 1, 11, 20).unwrap();
        assert!(is_invariant(&k, &group).unwrap());
        let mut coeffs = k.divisor().reduced_coeffs();
        coeffs[0] += 1;
        coeffs[1] -= 1;
        let bumped = KummerClass::new(1, DivisorVector::new(s.clone(), 8, coeffs).unwrap()).unwrap();
        assert!(!is_invariant(&bumped, &group).unwrap());
        let ring = s.ring().clone();
        assert!(is_invariant(&bumped, &[Matrix::identity(&ring, 2)]).unwrap());
        let wrong_level = crate::hyperplanes::random_gl_family(params, 2, 1, 1).unwrap();
        assert!(is_invariant(&k, &wrong_level).is_err());
    }

    #[test]
    fn invariant_enumeration_small() {
        let e = invariant_class_enumeration(Params::unramified(2, 1, 1).unwrap(), 2).unwrap();
        assert_eq!(e.solutions, vec![vec![0, 0], vec![1, 2], vec![2, 1]]);
        assert!(e.cyclic);
        let e = invariant_class_enumeration(Params::unramified(3, 1, 1).unwrap(), 2).unwrap();
        assert_eq!(e.generator, vec![2, 6]);
        assert_eq!(e.solutions.len(), 4);
        assert!(e.solutions.contains(&vec![0, 0]));
        assert!(e.cyclic);
    }
}
