//! Units on the tube over a maximal simplex, modulo 1-units and roots of
//! unity, as exponent maps over the symbols `x_j` and `P_a`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::base_rings::{Params, Ring};
use crate::building::SimplexPresentation;
use crate::divisor::DivisorVector;
use crate::error::{Error, Result};
use crate::hyperplanes::{HyperplaneClass, HyperplaneSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Chart coordinate `x_j`.
    X(usize),
    /// `P_a` for the `rep`-th element of `R_block`.
    P { block: usize, rep: usize },
}

/// `ϖ^pi · ∏ s^{e_s}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SymbolUnit {
    pi: i64,
    exps: BTreeMap<Symbol, i64>,
}

impl SymbolUnit {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn uniformizer_power(k: i64) -> Self {
        SymbolUnit { pi: k, exps: BTreeMap::new() }
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::symbol_power(s, 1)
    }

    pub fn symbol_power(s: Symbol, k: i64) -> Self {
        let mut u = Self::identity();
        u.bump(s, k);
        u
    }

    fn bump(&mut self, s: Symbol, k: i64) {
        let e = self.exps.entry(s).or_insert(0);
        *e += k;
        if *e == 0 {
            self.exps.remove(&s);
        }
    }

    pub fn pi_exponent(&self) -> i64 {
        self.pi
    }

    pub fn exponent(&self, s: Symbol) -> i64 {
        self.exps.get(&s).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (Symbol, i64)> + '_ {
        self.exps.iter().map(|(&s, &e)| (s, e))
    }

    pub fn is_identity(&self) -> bool {
        self.pi == 0 && self.exps.is_empty()
    }

    pub fn mul(&self, other: &SymbolUnit) -> SymbolUnit {
        let mut out = self.clone();
        out.pi += other.pi;
        for (&s, &e) in &other.exps {
            out.bump(s, e);
        }
        out
    }

    pub fn pow(&self, k: i64) -> SymbolUnit {
        if k == 0 {
            return Self::identity();
        }
        SymbolUnit { pi: self.pi * k, exps: self.exps.iter().map(|(&s, &e)| (s, e * k)).collect() }
    }

    pub fn inv(&self) -> SymbolUnit {
        self.pow(-1)
    }

    pub fn div(&self, other: &SymbolUnit) -> SymbolUnit {
        self.mul(&other.inv())
    }

    /// Rewrites `x_d = ϖ (x_0 ⋯ x_{d-1})^{-1}`, so that two units on the tube
    /// are equal iff their normalized forms agree.
    pub fn normalized(&self, d: usize) -> SymbolUnit {
        let k = self.exponent(Symbol::X(d));
        if k == 0 {
            return self.clone();
        }
        let mut out = self.clone();
        out.bump(Symbol::X(d), -k);
        out.pi += k;
        for j in 0..d {
            out.bump(Symbol::X(j), -k);
        }
        out
    }

    /// Equality modulo `N`-th powers (after normalization).
    pub fn congruent(&self, other: &SymbolUnit, n: u64, d: usize) -> bool {
        self.residues_mod(other, n, d).is_empty()
    }

    /// Nonzero residues mod `n` of the exponents of `self / other`; `None`
    /// stands for the `ϖ`-exponent.
    pub fn residues_mod(&self, other: &SymbolUnit, n: u64, d: usize) -> Vec<(Option<Symbol>, i64)> {
        let q = self.div(other).normalized(d);
        let n = n as i64;
        let mut out = Vec::new();
        if q.pi.rem_euclid(n) != 0 {
            out.push((None, q.pi.rem_euclid(n)));
        }
        for (s, e) in q.exponents() {
            if e.rem_euclid(n) != 0 {
                out.push((Some(s), e.rem_euclid(n)));
            }
        }
        out
    }

    /// `N`-th root of a unit all of whose exponents are multiples of `n`.
    pub fn exact_root(&self, n: i64) -> Option<SymbolUnit> {
        if self.pi % n != 0 || self.exps.values().any(|e| e % n != 0) {
            return None;
        }
        Some(SymbolUnit { pi: self.pi / n, exps: self.exps.iter().map(|(&s, &e)| (s, e / n)).collect() })
    }

    pub fn format(&self, name: impl Fn(Symbol) -> String) -> String {
        let mut parts = Vec::new();
        let pow = |base: String, e: i64| if e == 1 { base } else { format!("{base}^{e}") };
        if self.pi != 0 {
            parts.push(pow("pi".into(), self.pi));
        }
        for (s, e) in self.exponents() {
            parts.push(pow(name(s), e));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" * ")
        }
    }

    pub fn to_json(&self, name: impl Fn(Symbol) -> String) -> Value {
        let symbols: Vec<Value> = self.exponents().map(|(s, e)| json!([name(s), e.to_string()])).collect();
        json!({ "pi_exponent": self.pi.to_string(), "symbols": symbols })
    }
}

/// Coefficients `(v_0, ..., v_d)` of a free Raynaud presentation
/// `y_i^q = v_i y_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaynaudDatum {
    q: u64,
    d: usize,
    units: Vec<SymbolUnit>,
}

impl RaynaudDatum {
    pub fn new(params: Params, units: Vec<SymbolUnit>) -> Result<Self> {
        if units.len() != params.d as usize + 1 {
            return Err(Error::InvalidParams(format!("a datum needs {} units", params.d + 1)));
        }
        Ok(RaynaudDatum { q: params.q(), d: params.d as usize, units })
    }

    pub fn identity(params: Params) -> Self {
        RaynaudDatum { q: params.q(), d: params.d as usize, units: vec![SymbolUnit::identity(); params.d as usize + 1] }
    }

    pub fn units(&self) -> &[SymbolUnit] {
        &self.units
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn d(&self) -> usize {
        self.d
    }

    fn modulus(&self) -> u64 {
        self.q.pow(self.d as u32 + 1) - 1
    }

    pub fn product(&self) -> SymbolUnit {
        self.units.iter().fold(SymbolUnit::identity(), |acc, u| acc.mul(u))
    }

    /// `(v_i w_i^q / w_{i+1})_i`.
    pub fn twist(&self, w: &[SymbolUnit]) -> RaynaudDatum {
        let n = self.d + 1;
        let units = (0..n)
            .map(|i| self.units[i].mul(&w[i].pow(self.q as i64)).div(&w[(i + 1) % n]).normalized(self.d))
            .collect();
        RaynaudDatum { q: self.q, d: self.d, units }
    }

    /// `(v_i / v'_i)` componentwise.
    pub fn ratio(&self, other: &RaynaudDatum) -> RaynaudDatum {
        let units = self.units.iter().zip(&other.units).map(|(a, b)| a.div(b).normalized(self.d)).collect();
        RaynaudDatum { q: self.q, d: self.d, units }
    }
}

/// `V(v) = v_0 v_d^q v_{d-1}^{q^2} ⋯ v_1^{q^d}`.
pub fn v_invariant(datum: &RaynaudDatum) -> SymbolUnit {
    let d = datum.d;
    let mut out = datum.units[0].clone();
    for k in 1..=d {
        out = out.mul(&datum.units[k].pow(datum.q.pow((d + 1 - k) as u32) as i64));
    }
    out.normalized(d)
}

/// `Ṽ(v) = x_0^{q-1} x_1^{q^2-1} ⋯ x_{d-1}^{q^d-1} V(v)`.
pub fn vtilde_invariant(datum: &RaynaudDatum) -> SymbolUnit {
    let mut out = v_invariant(datum);
    for j in 0..datum.d {
        out = out.mul(&SymbolUnit::symbol_power(Symbol::X(j), datum.q.pow(j as u32 + 1) as i64 - 1));
    }
    out
}

/// `u_i = ∏_{R_{d-1-i}} P / ∏_{R_{d-i}} P`, indices mod `d + 1`.
pub fn ui_family(pres: &SimplexPresentation) -> Result<RaynaudDatum> {
    if !pres.is_maximal() {
        return Err(Error::NotMaximal);
    }
    let params = pres.params();
    let n = params.d as usize + 1;
    let block_product = |b: usize, sign: i64| {
        (0..pres.representatives(b).len())
            .fold(SymbolUnit::identity(), |acc, rep| acc.mul(&SymbolUnit::symbol_power(Symbol::P { block: b, rep }, sign)))
    };
    let units = (0..n)
        .map(|i| {
            let up = (2 * n - 2 - i) % n;
            let down = (n - 1 - i) % n;
            block_product(up, 1).mul(&block_product(down, -1))
        })
        .collect();
    RaynaudDatum::new(params, units)
}

/// Witness `(w_i)` with `v'_i = v_i w_i^q / w_{i+1}`, if one exists.
pub fn solve_witness(a: &RaynaudDatum, b: &RaynaudDatum) -> Option<Vec<SymbolUnit>> {
    let d = a.d;
    let n = d + 1;
    let delta = b.ratio(a);
    let big_n = a.modulus() as i64;
    let w1 = v_invariant(&delta).exact_root(big_n)?;
    let mut w = vec![SymbolUnit::identity(); n];
    w[1 % n] = w1;
    // w_{i+1} = w_i^q / δ_i for i = 1, ..., d
    for i in 1..n {
        let next = w[i].pow(a.q as i64).div(&delta.units[i]).normalized(d);
        w[(i + 1) % n] = next;
    }
    let consistent =
        (0..n).all(|i| w[i].pow(a.q as i64).div(&w[(i + 1) % n]).normalized(d) == delta.units[i].normalized(d));
    consistent.then_some(w)
}

pub fn equivalent(a: &RaynaudDatum, b: &RaynaudDatum) -> bool {
    solve_witness(a, b).is_some()
}

/// The criterion through the invariant alone: `Ṽ(a) ≡ Ṽ(b)` modulo `N`-th powers.
pub fn equivalent_by_invariant(a: &RaynaudDatum, b: &RaynaudDatum) -> bool {
    vtilde_invariant(a).congruent(&vtilde_invariant(b), a.modulus(), a.d)
}

/// Aggregated unit `ϖ ∏_a (l_ã / z_d)^{q(q-1)}` over `a ∈ P^d(O/ϖ^2)`.
#[derive(Debug, Clone)]
pub struct GenericFiberClass {
    pub unit: SymbolUnit,
    /// Number of level-2 classes reached by `(b̃, c) ↦ [b̃ + ϖ c̃]`.
    pub hits: usize,
    /// Whether that map is a bijection onto `H_2`.
    pub bijective: bool,
}

pub fn generic_fiber_class(pres: &SimplexPresentation) -> Result<GenericFiberClass> {
    if !pres.is_maximal() {
        return Err(Error::NotMaximal);
    }
    let params = pres.params();
    let d = params.d as usize;
    let q = params.q();
    let set = HyperplaneSet::new(params, 2)?;
    let ring = set.ring();
    let pi = ring.uniformizer();
    let lifts = ring.teichmuller_lifts();
    let weight = (q * (q - 1)) as i64;
    let mut unit = SymbolUnit::uniformizer_power(1);
    let mut seen = HashSet::new();
    let mut hits = 0;
    let mut consistent = true;
    for (i, reps) in pres.blocks().iter().enumerate() {
        for (r, rep) in reps.iter().enumerate() {
            // c ranges over F_q^i, added to the first i coordinates
            for code in 0..q.pow(i as u32) {
                let mut v = rep.lifted.clone();
                for (j, slot) in v.iter_mut().enumerate().take(i) {
                    let c = lifts[(code / q.pow(j as u32) % q) as usize];
                    *slot = ring.add(*slot, ring.mul(pi, c));
                }
                let class = HyperplaneClass::from_entries(ring, v)?;
                let ia = class.last_unit(ring);
                consistent &= ia == i;
                hits += 1;
                seen.insert(set.index_of(&class).expect("class of H_2"));
                for k in ia..d {
                    unit.bump(Symbol::X(k), weight);
                }
                unit.bump(Symbol::P { block: i, rep: r }, weight);
            }
        }
    }
    let bijective = consistent && hits == set.len() && seen.len() == set.len();
    Ok(GenericFiberClass { unit, hits, bijective })
}

/// Comparison of the generic-fiber class with `ϖ Ṽ(u)`.
#[derive(Debug, Clone)]
pub struct CongruenceReport {
    pub ok: bool,
    pub bijective: bool,
    /// Exponent of `x_j` in the aggregated class, reduced mod `N`, for `j < d`.
    pub x_exponents: Vec<i64>,
    /// Nonzero residues of the quotient; empty when `ok`.
    pub residues: Vec<(Option<Symbol>, i64)>,
}

pub fn verify_generic_fiber_congruence(pres: &SimplexPresentation) -> Result<CongruenceReport> {
    let params = pres.params();
    let d = params.d as usize;
    let n = params.galois_order();
    let class = generic_fiber_class(pres)?;
    let target = SymbolUnit::uniformizer_power(1).mul(&vtilde_invariant(&ui_family(pres)?));
    let residues = class.unit.residues_mod(&target, n, d);
    let x_exponents = (0..d).map(|j| class.unit.exponent(Symbol::X(j)).rem_euclid(n as i64)).collect();
    Ok(CongruenceReport { ok: residues.is_empty() && class.bijective, bijective: class.bijective, x_exponents, residues })
}

/// Divisor of a unit on the tube, read on the adjacent vertex `H_1`.
pub fn restrict_to_vertex(
    pres: &SimplexPresentation,
    set: &Arc<HyperplaneSet>,
    s: &SymbolUnit,
) -> Result<(i64, DivisorVector)> {
    if !pres.is_maximal() {
        return Err(Error::NotMaximal);
    }
    if set.level() != 1 || set.params() != pres.params() {
        return Err(Error::LevelMismatch(set.level(), 1));
    }
    let d = pres.params().d as usize;
    let ring = set.ring();
    let high = pres.ring();
    let coord = |j: usize| {
        let v = (0..=d).map(|k| if k == j { ring.one() } else { ring.zero() }).collect();
        set.locate(v).expect("coordinate vectors are unimodular")
    };
    let mut coeffs = vec![0i64; set.len()];
    let mut pi = s.pi_exponent();
    for (sym, e) in s.exponents() {
        let (plus, minus) = match sym {
            Symbol::X(j) if j < d => (coord(j), coord(j + 1)),
            Symbol::X(_) => {
                pi += e;
                (coord(d), coord(0))
            }
            Symbol::P { block, rep } => {
                let lifted = &pres.representatives(block)[rep].lifted;
                let bar = lifted.iter().map(|&x| high.reduce_to(x, ring)).collect::<Result<Vec<_>>>()?;
                (set.locate(bar)?, coord(block))
            }
        };
        coeffs[plus] += e;
        coeffs[minus] -= e;
    }
    Ok((pi, DivisorVector::new(set.clone(), 0, coeffs)?))
}

/// Report for `∏_i u_i x_{d-i} = ϖ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalSectionReport {
    pub ok: bool,
    pub product_of_units_trivial: bool,
    pub product: SymbolUnit,
}

pub fn verify_global_section(pres: &SimplexPresentation) -> Result<GlobalSectionReport> {
    let u = ui_family(pres)?;
    let d = pres.params().d as usize;
    let product_of_units_trivial = u.product().normalized(d).is_identity();
    let product = (0..=d)
        .fold(SymbolUnit::identity(), |acc, i| acc.mul(&u.units()[i]).mul(&SymbolUnit::symbol(Symbol::X(d - i))))
        .normalized(d);
    let ok = product_of_units_trivial && product == SymbolUnit::uniformizer_power(1);
    Ok(GlobalSectionReport { ok, product_of_units_trivial, product })
}
