//! Lagrange idempotents on `μ_{q-1}` and canonical forms `t^{j_a} v_a` of
//! invertible functions on the components of the first covering.

use std::sync::Arc;

use num_rational::Rational64;
use serde_json::{json, Value};

use crate::base_rings::{CyclotomicElem, CyclotomicField, Params};
use crate::divisor::DivisorVector;
use crate::error::{Error, Result};
use crate::hyperplanes::HyperplaneSet;

/// The interpolation polynomial equal to 1 at `a = ζ^k` and 0 on the other
/// `(q-1)`-th roots of unity. Coefficients low degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangePoly {
    pub q: u64,
    pub root_index: u64,
    pub coeffs: Vec<CyclotomicElem>,
}

type CycPoly = Vec<CyclotomicElem>;

fn poly_mul(k: &CyclotomicField, a: &CycPoly, b: &CycPoly) -> CycPoly {
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    out
}

/// Reduce modulo `X^m - 1`.
fn cyclic_reduce(k: &CyclotomicField, a: &CycPoly, m: usize) -> CycPoly {
    let mut out = vec![k.zero(); m];
    for (i, x) in a.iter().enumerate() {
        out[i % m] = k.add(&out[i % m], x);
    }
    out
}

pub fn eval(k: &CyclotomicField, p: &[CyclotomicElem], x: &CyclotomicElem) -> CyclotomicElem {
    p.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
}

/// `L_a(X) = ∏_{b ≠ a} (X - b) / (a - b)`.
pub fn lagrange(q: u64, root_index: u64) -> LagrangePoly {
    let m = q - 1;
    let k = CyclotomicField::new(m);
    let a = k.zeta_pow(root_index as i64);
    let mut num: CycPoly = vec![k.one()];
    let mut den = k.one();
    for b in (0..m).filter(|&b| b != root_index % m) {
        let b = k.zeta_pow(b as i64);
        num = poly_mul(&k, &num, &vec![k.neg(&b), k.one()]);
        den = k.mul(&den, &k.sub(&a, &b));
    }
    let inv = k.inv(&den).expect("distinct roots");
    LagrangePoly { q, root_index: root_index % m, coeffs: num.iter().map(|c| k.mul(c, &inv)).collect() }
}

impl LagrangePoly {
    pub fn field(&self) -> CyclotomicField {
        CyclotomicField::new(self.q - 1)
    }

    pub fn format(&self) -> String {
        let k = self.field();
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let s = k.format(c);
                let s = if s.contains(' ') { format!("({s})") } else { s };
                match i {
                    0 => s,
                    1 => format!("{s}*X"),
                    _ => format!("{s}*X^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Which identities hold for the family `(L_a)_a` in `Q(ζ)[X]/(X^{q-1} - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentReport {
    pub interpolates: bool,
    pub idempotent: bool,
    pub orthogonal: bool,
    pub sum_is_one: bool,
    /// Whether every `L_a` is monic of degree `q - 2`.
    pub monic: bool,
}

impl IdempotentReport {
    pub fn ok(&self) -> bool {
        self.interpolates && self.idempotent && self.orthogonal && self.sum_is_one
    }
}

pub fn idempotent_report(q: u64) -> IdempotentReport {
    let m = (q - 1) as usize;
    let k = CyclotomicField::new(q - 1);
    let ls: Vec<LagrangePoly> = (0..q - 1).map(|a| lagrange(q, a)).collect();
    let mut report = IdempotentReport { interpolates: true, idempotent: true, orthogonal: true, sum_is_one: true, monic: true };
    let mut sum = vec![k.zero(); m];
    for (a, la) in ls.iter().enumerate() {
        for b in 0..m {
            let value = eval(&k, &la.coeffs, &k.zeta_pow(b as i64));
            let expected = if a == b { k.one() } else { k.zero() };
            report.interpolates &= value == expected;
        }
        for (b, lb) in ls.iter().enumerate() {
            let prod = cyclic_reduce(&k, &poly_mul(&k, &la.coeffs, &lb.coeffs), m);
            let expected = if a == b { cyclic_reduce(&k, &la.coeffs, m) } else { vec![k.zero(); m] };
            if a == b {
                report.idempotent &= prod == expected;
            } else {
                report.orthogonal &= prod == expected;
            }
        }
        for (i, c) in la.coeffs.iter().enumerate() {
            sum[i % m] = k.add(&sum[i % m], c);
        }
        report.monic &= la.coeffs.last() == Some(&k.one()) && la.coeffs.len() == m;
    }
    let mut one = vec![k.zero(); m];
    one[0] = k.one();
    report.sum_is_one = sum == one;
    report
}

pub fn idempotent_check(q: u64) -> bool {
    idempotent_report(q).ok()
}

/// `ϖ^pi` times the function with integral degree-zero divisor on `H_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitModel {
    pub pi: i64,
    pub divisor: DivisorVector,
}

impl UnitModel {
    pub fn trivial(set: &Arc<HyperplaneSet>) -> Self {
        UnitModel { pi: 0, divisor: DivisorVector::zero(set.clone(), 0) }
    }

    pub fn mul(&self, other: &UnitModel) -> Result<UnitModel> {
        Ok(UnitModel { pi: self.pi + other.pi, divisor: self.divisor.add(&other.divisor)? })
    }

    pub fn pow(&self, k: i64) -> UnitModel {
        UnitModel { pi: self.pi * k, divisor: self.divisor.scale(k) }
    }

    pub fn is_trivial(&self) -> bool {
        self.pi == 0 && self.divisor.coeffs().iter().all(|&c| c == 0)
    }

    pub fn to_json(&self) -> Value {
        json!({ "pi_exponent": self.pi.to_string(), "divisor": self.divisor.to_json() })
    }
}

/// Restriction of a function to one geometric component.
#[derive(Debug, Clone, PartialEq)]
pub enum Component {
    Zero,
    /// `t^j v` with `0 <= j < Ñ`.
    Unit { j: u64, v: UnitModel },
}

/// Context: the base unit `u = ∏_{H ≠ H_0} l_H / l_{H_0}` on `H_1`, with
/// `t^N = u^{q-1}` and `t_0 = t^Ñ / u` equal to `a` on the component `a`.
#[derive(Debug, Clone)]
pub struct ComponentRing {
    params: Params,
    set: Arc<HyperplaneSet>,
    base: usize,
    u: UnitModel,
}

/// `(Component_a)_{a ∈ μ_{q-1}}`, indexed by `a = ζ^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentFunction {
    pub components: Vec<Component>,
}

/// Divisor on `H_1` with rational coefficients and a rational `ϖ`-exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalDivisor {
    pub pi: Rational64,
    pub coeffs: Vec<Rational64>,
}

impl ComponentRing {
    /// `base` is the index of `H_0` in `H_1`.
    pub fn new(params: Params, base: usize) -> Result<Self> {
        let set = HyperplaneSet::shared(params, 1)?;
        if base >= set.len() {
            return Err(Error::InvalidParams(format!("no hyperplane with index {base}")));
        }
        let mut coeffs = vec![1i64; set.len()];
        coeffs[base] = 1 - set.len() as i64;
        let u = UnitModel { pi: 0, divisor: DivisorVector::new(set.clone(), 0, coeffs)? };
        Ok(ComponentRing { params, set, base, u })
    }

    pub fn set(&self) -> &Arc<HyperplaneSet> {
        &self.set
    }

    pub fn base_index(&self) -> usize {
        self.base
    }

    pub fn degree(&self) -> u64 {
        self.params.component_degree()
    }

    pub fn components(&self) -> usize {
        (self.params.q() - 1) as usize
    }

    pub fn base_unit(&self) -> &UnitModel {
        &self.u
    }

    pub fn trivial_unit(&self) -> UnitModel {
        UnitModel::trivial(&self.set)
    }

    pub fn unit_model(&self, pi: i64, coeffs: Vec<i64>) -> Result<UnitModel> {
        Ok(UnitModel { pi, divisor: DivisorVector::new(self.set.clone(), 0, coeffs)? })
    }

    pub fn uniform(&self, c: Component) -> ComponentFunction {
        ComponentFunction { components: vec![c; self.components()] }
    }

    pub fn identity(&self) -> ComponentFunction {
        self.uniform(Component::Unit { j: 0, v: self.trivial_unit() })
    }

    pub fn t(&self) -> ComponentFunction {
        if self.degree() == 1 {
            return self.uniform(Component::Unit { j: 0, v: self.u.clone() });
        }
        self.uniform(Component::Unit { j: 1, v: self.trivial_unit() })
    }

    pub fn from_unit(&self, v: UnitModel) -> ComponentFunction {
        self.uniform(Component::Unit { j: 0, v })
    }

    /// `t^j v · t^{j'} v' = t^{(j+j') mod Ñ} v v' u^{⌊(j+j')/Ñ⌋}`, using
    /// `t^Ñ = u t_0` and dropping the root of unity `t_0 = a`.
    pub fn mul(&self, x: &ComponentFunction, y: &ComponentFunction) -> Result<ComponentFunction> {
        let nt = self.degree();
        let components = x
            .components
            .iter()
            .zip(&y.components)
            .map(|(a, b)| match (a, b) {
                (Component::Unit { j, v }, Component::Unit { j: j2, v: v2 }) => {
                    let s = j + j2;
                    let v = v.mul(v2)?.mul(&self.u.pow((s / nt) as i64))?;
                    Ok(Component::Unit { j: s % nt, v })
                }
                _ => Ok(Component::Zero),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ComponentFunction { components })
    }

    pub fn inv(&self, x: &ComponentFunction) -> Result<ComponentFunction> {
        let nt = self.degree();
        let components = x
            .components
            .iter()
            .enumerate()
            .map(|(a, c)| match c {
                Component::Zero => Err(Error::NonUnit(a)),
                Component::Unit { j: 0, v } => Ok(Component::Unit { j: 0, v: v.pow(-1) }),
                Component::Unit { j, v } => {
                    Ok(Component::Unit { j: nt - j, v: v.pow(-1).mul(&self.u.pow(-1))? })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ComponentFunction { components })
    }

    pub fn pow(&self, x: &ComponentFunction, e: i64) -> Result<ComponentFunction> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        let mut acc = self.identity();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base)?;
        }
        Ok(acc)
    }

    /// Divisor of each component: `(j/Ñ) div(u) + div(v)`; `None` for zero.
    pub fn expand(&self, x: &ComponentFunction) -> Vec<Option<RationalDivisor>> {
        let nt = self.degree() as i64;
        x.components
            .iter()
            .map(|c| match c {
                Component::Zero => None,
                Component::Unit { j, v } => {
                    let r = Rational64::new(*j as i64, nt);
                    let coeffs = v
                        .divisor
                        .coeffs()
                        .iter()
                        .zip(self.u.divisor.coeffs())
                        .map(|(&c, &uc)| Rational64::from(c) + r * uc)
                        .collect();
                    Some(RationalDivisor { pi: Rational64::from(v.pi) + r * self.u.pi, coeffs })
                }
            })
            .collect()
    }

    /// Inverse of [`ComponentRing::expand`]: recovers the unique `(j_a, v_a)`.
    pub fn decompose(&self, parts: &[Option<RationalDivisor>]) -> Result<ComponentFunction> {
        if parts.len() != self.components() {
            return Err(Error::InvalidParams(format!("expected {} components", self.components())));
        }
        let nt = self.degree() as i64;
        let components = parts
            .iter()
            .enumerate()
            .map(|(a, part)| {
                let part = part.as_ref().ok_or(Error::NotAUnit(a))?;
                // div(u) has coefficient 1 away from H_0, so the fractional part there is j/Ñ
                let probe = (0..part.coeffs.len()).find(|&i| i != self.base).ok_or(Error::NotAUnit(a))?;
                let frac = part.coeffs[probe] - part.coeffs[probe].floor();
                let scaled = frac * nt;
                if !scaled.is_integer() {
                    return Err(Error::NotAUnit(a));
                }
                let j = scaled.to_integer();
                let r = Rational64::new(j, nt);
                let mut coeffs = Vec::with_capacity(part.coeffs.len());
                for (c, &uc) in part.coeffs.iter().zip(self.u.divisor.coeffs()) {
                    let v = c - r * uc;
                    if !v.is_integer() {
                        return Err(Error::NotAUnit(a));
                    }
                    coeffs.push(v.to_integer());
                }
                let pi = part.pi - r * self.u.pi;
                if !pi.is_integer() {
                    return Err(Error::NotAUnit(a));
                }
                let v = self.unit_model(pi.to_integer(), coeffs).map_err(|_| Error::NotAUnit(a))?;
                Ok(Component::Unit { j: j as u64, v })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ComponentFunction { components })
    }

    pub fn to_json(&self, x: &ComponentFunction) -> Value {
        let items: Vec<Value> = x
            .components
            .iter()
            .enumerate()
            .map(|(a, c)| match c {
                Component::Zero => json!([a.to_string(), Value::Null, Value::Null]),
                Component::Unit { j, v } => json!([a.to_string(), j.to_string(), v.to_json()]),
            })
            .collect();
        Value::Array(items)
    }
}
