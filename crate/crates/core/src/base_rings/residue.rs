use super::{FieldElem, FiniteField, Ring};
use crate::error::{Error, Result};

/// Which concrete quotient of `O_K` a [`ResidueRing`] realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingModel {
    /// `Z / p^n`, for `K = Q_p`.
    Integers,
    /// `Z/p^n [x] / (g)` with `g` the integer lift of the residue field modulus, for `e = 1`.
    GaloisRing,
    /// `F_q[π] / (π^n)`, valid when the ramification index is at least `n`.
    TruncatedPower,
}

/// Element of a [`ResidueRing`]: the mixed-radix code of its canonical
/// coefficient vector. Equal codes are equal elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidueRingElem(pub u32);

/// `O_K / ϖ^n` for a local field with residue field `F_q` and ramification `e`.
///
/// Only `e = 1` or `e >= n` are modelled; in the remaining cases `p` is
/// neither a uniformizer nor zero and a general Eisenstein presentation would
/// be required.
#[derive(Debug, Clone)]
pub struct ResidueRing {
    p: u32,
    f: u32,
    e: u32,
    level: u32,
    model: RingModel,
    field: FiniteField,
    // every limb lives in [0, radix)
    radix: u32,
    limbs: usize,
    size: u32,
}

const MAX_SIZE: u64 = 1 << 30;

impl ResidueRing {
    pub fn new(p: u32, f: u32, e: u32, level: u32) -> Result<Self> {
        if f == 0 || e == 0 || level == 0 {
            return Err(Error::InvalidParams("f, e and the level must be positive".into()));
        }
        if 1 < e && e < level {
            return Err(Error::UnsupportedRing { p, f, e, level });
        }
        let field = FiniteField::new(p, f)?;
        let (model, radix, limbs) = if e == 1 {
            let radix = (p as u64).pow(level);
            let model = if f == 1 { RingModel::Integers } else { RingModel::GaloisRing };
            (model, radix, f as usize)
        } else {
            (RingModel::TruncatedPower, field.order() as u64, level as usize)
        };
        let size = (radix as f64).powi(limbs as i32);
        if radix > MAX_SIZE || size > MAX_SIZE as f64 {
            return Err(Error::UnsupportedRing { p, f, e, level });
        }
        let radix = radix as u32;
        Ok(ResidueRing { p, f, e, level, model, field, radix, limbs, size: radix.pow(limbs as u32) })
    }

    pub fn characteristic_prime(&self) -> u32 {
        self.p
    }

    pub fn residue_degree(&self) -> u32 {
        self.f
    }

    pub fn ramification(&self) -> u32 {
        self.e
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn model(&self) -> RingModel {
        self.model
    }

    pub fn residue_field(&self) -> &FiniteField {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = ResidueRingElem> {
        (0..self.size).map(ResidueRingElem)
    }

    fn split(&self, x: ResidueRingElem) -> Vec<u32> {
        let mut code = x.0;
        (0..self.limbs)
            .map(|_| {
                let d = code % self.radix;
                code /= self.radix;
                d
            })
            .collect()
    }

    fn join(&self, limbs: &[u32]) -> ResidueRingElem {
        debug_assert_eq!(limbs.len(), self.limbs);
        let mut code = 0u32;
        for &l in limbs.iter().rev() {
            code = code * self.radix + l;
        }
        ResidueRingElem(code)
    }

    /// Canonical coefficient vector over `Z/p^⌈n/e⌉`: the `x`-coordinates in
    /// the Galois ring models, the flattened `F_p`-digits of the `π`-adic
    /// coefficients in the truncated model.
    pub fn coefficients(&self, x: ResidueRingElem) -> Vec<u32> {
        match self.model {
            RingModel::Integers | RingModel::GaloisRing => self.split(x),
            RingModel::TruncatedPower => self
                .split(x)
                .into_iter()
                .flat_map(|l| self.field.digits(FieldElem(l)))
                .collect(),
        }
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> ResidueRingElem {
        match self.model {
            RingModel::Integers | RingModel::GaloisRing => {
                let limbs: Vec<u32> = (0..self.limbs)
                    .map(|i| coeffs.get(i).copied().unwrap_or(0) % self.radix)
                    .collect();
                self.join(&limbs)
            }
            RingModel::TruncatedPower => {
                let f = self.f as usize;
                let limbs: Vec<u32> = (0..self.limbs)
                    .map(|i| {
                        let chunk: Vec<u32> =
                            (0..f).map(|j| coeffs.get(i * f + j).copied().unwrap_or(0)).collect();
                        self.field.from_digits(&chunk).0
                    })
                    .collect();
                self.join(&limbs)
            }
        }
    }

    /// Reduction modulo the maximal ideal.
    pub fn residue(&self, x: ResidueRingElem) -> FieldElem {
        match self.model {
            RingModel::Integers | RingModel::GaloisRing => {
                let digits: Vec<u32> = self.split(x).into_iter().map(|c| c % self.p).collect();
                self.field.from_digits(&digits)
            }
            RingModel::TruncatedPower => FieldElem(self.split(x)[0]),
        }
    }

    pub fn is_unit(&self, x: ResidueRingElem) -> bool {
        self.residue(x).0 != 0
    }

    pub fn unit_count(&self) -> u64 {
        let q = self.q();
        q.pow(self.level) - q.pow(self.level - 1)
    }

    pub fn inv(&self, x: ResidueRingElem) -> Option<ResidueRingElem> {
        self.is_unit(x).then(|| self.pow(x, self.unit_count() - 1))
    }

    /// Image of the uniformizer `ϖ` (which is `p` when `e = 1`).
    pub fn uniformizer(&self) -> ResidueRingElem {
        match self.model {
            RingModel::Integers | RingModel::GaloisRing => self.from_int(self.p as i64),
            RingModel::TruncatedPower => {
                let mut limbs = vec![0; self.limbs];
                if self.limbs > 1 {
                    limbs[1] = 1;
                }
                self.join(&limbs)
            }
        }
    }

    /// Largest `k <= n` with `x ∈ ϖ^k`; the zero element has valuation `n`.
    pub fn valuation(&self, x: ResidueRingElem) -> u32 {
        let limbs = self.split(x);
        match self.model {
            RingModel::Integers | RingModel::GaloisRing => limbs
                .into_iter()
                .map(|c| {
                    let (mut c, mut v) = (c, 0);
                    while c != 0 && c % self.p == 0 {
                        c /= self.p;
                        v += 1;
                    }
                    if c == 0 {
                        self.level
                    } else {
                        v
                    }
                })
                .min()
                .unwrap_or(self.level),
            RingModel::TruncatedPower => {
                limbs.iter().position(|&l| l != 0).map_or(self.level, |k| k as u32)
            }
        }
    }

    /// Coefficient-wise section `F_q -> R`: the residue digits read as integers
    /// (Galois ring models) or the constant polynomial (truncated model).
    pub fn coefficient_lift(&self, a: FieldElem) -> ResidueRingElem {
        match self.model {
            RingModel::Integers | RingModel::GaloisRing => self.join(&self.field.digits(a)),
            RingModel::TruncatedPower => {
                let mut limbs = vec![0; self.limbs];
                limbs[0] = a.0;
                self.join(&limbs)
            }
        }
    }

    /// Multiplicative section `F_q -> R` where it exists (`e = 1`): the unique
    /// lift fixed by `x ↦ x^q`. In the truncated model the constants already
    /// form a copy of `F_q`.
    pub fn teichmuller_lift(&self, a: FieldElem) -> ResidueRingElem {
        let c = self.coefficient_lift(a);
        match self.model {
            RingModel::TruncatedPower => c,
            _ => self.pow(c, self.q().pow(self.level - 1)),
        }
    }

    pub fn teichmuller_lifts(&self) -> Vec<ResidueRingElem> {
        self.field.elements().map(|a| self.teichmuller_lift(a)).collect()
    }

    fn same_tower(&self, other: &ResidueRing) -> bool {
        self.p == other.p && self.f == other.f && self.e == other.e
    }

    /// Image under `O/ϖ^n -> O/ϖ^m` for `m <= n`.
    pub fn reduce_to(&self, x: ResidueRingElem, target: &ResidueRing) -> Result<ResidueRingElem> {
        if !self.same_tower(target) || target.level > self.level {
            return Err(Error::LevelMismatch(self.level, target.level));
        }
        let limbs = self.split(x);
        Ok(match self.model {
            RingModel::Integers | RingModel::GaloisRing => {
                target.join(&limbs.iter().map(|&c| c % target.radix).collect::<Vec<_>>())
            }
            RingModel::TruncatedPower => target.join(&limbs[..target.limbs]),
        })
    }

    /// Canonical-coefficient rendering: `5`, `3+x`, `1+2pi`, `(1+w)pi^2`.
    pub fn format(&self, x: ResidueRingElem) -> String {
        let limbs = self.split(x);
        let (var, coeff): (&str, Box<dyn Fn(u32) -> String>) = match self.model {
            RingModel::Integers | RingModel::GaloisRing => ("x", Box::new(|c: u32| c.to_string())),
            RingModel::TruncatedPower => ("pi", Box::new(|c: u32| self.field.format(FieldElem(c)))),
        };
        let mut terms = Vec::new();
        for (i, &c) in limbs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = coeff(c);
            let c = if c.contains('+') && i > 0 { format!("({c})") } else { c };
            terms.push(match (i, c.as_str()) {
                (0, _) => c,
                (1, "1") => var.to_string(),
                (1, _) => format!("{c}{var}"),
                (_, "1") => format!("{var}^{i}"),
                _ => format!("{c}{var}^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl Ring for ResidueRing {
    type Elem = ResidueRingElem;

    fn zero(&self) -> ResidueRingElem {
        ResidueRingElem(0)
    }

    fn one(&self) -> ResidueRingElem {
        ResidueRingElem(1)
    }

    fn add(&self, a: ResidueRingElem, b: ResidueRingElem) -> ResidueRingElem {
        if self.limbs == 1 && self.model != RingModel::TruncatedPower {
            return ResidueRingElem((a.0 + b.0) % self.radix);
        }
        let (x, y) = (self.split(a), self.split(b));
        let sum: Vec<u32> = match self.model {
            RingModel::TruncatedPower => x
                .iter()
                .zip(&y)
                .map(|(&s, &t)| self.field.add(FieldElem(s), FieldElem(t)).0)
                .collect(),
            _ => x.iter().zip(&y).map(|(&s, &t)| (s + t) % self.radix).collect(),
        };
        self.join(&sum)
    }

    fn neg(&self, a: ResidueRingElem) -> ResidueRingElem {
        let x = self.split(a);
        let out: Vec<u32> = match self.model {
            RingModel::TruncatedPower => x.iter().map(|&s| self.field.neg(FieldElem(s)).0).collect(),
            _ => x.iter().map(|&s| (self.radix - s) % self.radix).collect(),
        };
        self.join(&out)
    }

    fn mul(&self, a: ResidueRingElem, b: ResidueRingElem) -> ResidueRingElem {
        let (x, y) = (self.split(a), self.split(b));
        match self.model {
            RingModel::TruncatedPower => {
                let n = self.limbs;
                let mut out = vec![FieldElem(0); n];
                for i in 0..n {
                    if x[i] == 0 {
                        continue;
                    }
                    for j in 0..n - i {
                        let t = self.field.mul(FieldElem(x[i]), FieldElem(y[j]));
                        out[i + j] = self.field.add(out[i + j], t);
                    }
                }
                self.join(&out.iter().map(|c| c.0).collect::<Vec<_>>())
            }
            _ => {
                let m = self.limbs;
                let r = self.radix as u64;
                if m == 1 {
                    return ResidueRingElem(((x[0] as u64 * y[0] as u64) % r) as u32);
                }
                let mut prod = vec![0u64; 2 * m - 1];
                for i in 0..m {
                    for j in 0..m {
                        prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % r;
                    }
                }
                // x^m = -(c_0 + ... + c_{m-1} x^{m-1}) with c_i the integer lift of the field modulus
                let modulus = self.field.modulus();
                for k in (m..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, &g) in modulus.iter().enumerate() {
                        let idx = k - m + i;
                        prod[idx] = (prod[idx] + (r - c) * g as u64) % r;
                    }
                }
                self.join(&prod[..m].iter().map(|&c| c as u32).collect::<Vec<_>>())
            }
        }
    }

    fn from_int(&self, n: i64) -> ResidueRingElem {
        match self.model {
            RingModel::TruncatedPower => self.coefficient_lift(self.field.from_int(n)),
            _ => {
                let mut limbs = vec![0; self.limbs];
                limbs[0] = n.rem_euclid(self.radix as i64) as u32;
                self.join(&limbs)
            }
        }
    }
}
