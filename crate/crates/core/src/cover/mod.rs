//! The special-fiber cover ring `F[X_0..X_{d-1}, 1/P, t] / (t^Ñ - P)` over
//! `F = F_{q^{d+1}}`, with `P` the product of the affine `F_q`-rational
//! linear forms.

mod fraction;
mod lemma;

pub use fraction::BaseFraction;
pub use lemma::{check_norm_one_is_root_of_unity, NormLemmaReport};

use num_rational::Rational64;
use rand::Rng;
use serde_json::{json, Map, Value};

use crate::base_rings::{FieldElem, FiniteField, Params, Poly, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct CoverAlgebra {
    params: Params,
    field: FiniteField,
    nvars: usize,
    /// Coefficients `(a_0, ..., a_d)` of `l_H = a_0 X_0 + ... + a_{d-1} X_{d-1} + a_d`.
    form_coeffs: Vec<Vec<FieldElem>>,
    forms: Vec<Poly<FieldElem>>,
    p_poly: Poly<FieldElem>,
}

/// `Σ_i f_i t^i` with `0 <= i < Ñ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverElement {
    comps: Vec<BaseFraction>,
}

impl CoverElement {
    pub fn components(&self) -> &[BaseFraction] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(BaseFraction::is_zero)
    }
}

impl CoverAlgebra {
    pub fn new(params: Params) -> Result<Self> {
        let field = FiniteField::new(params.p, params.f * (params.d + 1))?;
        let sub = field.subfield(params.f);
        let d = params.d as usize;
        let q = sub.len() as u64;
        let mut form_coeffs = Vec::new();
        for code in 0..q.pow(d as u32 + 1) {
            let a: Vec<FieldElem> = (0..=d).map(|j| sub[(code / q.pow(j as u32) % q) as usize]).collect();
            // skip the hyperplane at infinity and non-normalized vectors
            match a[..d].iter().find(|x| x.0 != 0) {
                Some(x) if *x == field.one() => form_coeffs.push(a),
                _ => {}
            }
        }
        form_coeffs.sort();
        let forms: Vec<Poly<FieldElem>> = form_coeffs
            .iter()
            .map(|a| {
                let mut l = Poly::constant(&field, d, a[d]);
                for (j, &c) in a[..d].iter().enumerate() {
                    l = l.add(&field, &Poly::var(&field, d, j).scale(&field, c));
                }
                l
            })
            .collect();
        let p_poly = forms.iter().fold(Poly::one(&field, d), |acc, l| acc.mul(&field, l));
        Ok(CoverAlgebra { params, field, nvars: d, form_coeffs, forms, p_poly })
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `Ñ`, the degree of the cover.
    pub fn degree(&self) -> usize {
        self.params.component_degree() as usize
    }

    pub fn forms(&self) -> &[Poly<FieldElem>] {
        &self.forms
    }

    pub fn form_coeffs(&self) -> &[Vec<FieldElem>] {
        &self.form_coeffs
    }

    pub fn form_index(&self, coeffs: &[FieldElem]) -> Option<usize> {
        self.form_coeffs.iter().position(|a| a == coeffs)
    }

    pub fn p_poly(&self) -> &Poly<FieldElem> {
        &self.p_poly
    }

    pub fn variable_names(&self) -> Vec<String> {
        (0..self.nvars).map(|j| format!("X{j}")).collect()
    }

    // ---- base fractions ----

    pub fn frac_zero(&self) -> BaseFraction {
        BaseFraction::from_parts(Poly::zero(self.nvars), vec![0; self.forms.len()])
    }

    pub fn frac_poly(&self, p: Poly<FieldElem>) -> BaseFraction {
        self.reduce(BaseFraction::from_parts(p, vec![0; self.forms.len()]))
    }

    pub fn frac_const(&self, c: FieldElem) -> BaseFraction {
        self.frac_poly(Poly::constant(&self.field, self.nvars, c))
    }

    /// `num / ∏ l_k^{den_k}`, reduced.
    pub fn frac(&self, num: Poly<FieldElem>, den: Vec<u32>) -> BaseFraction {
        assert_eq!(den.len(), self.forms.len());
        self.reduce(BaseFraction::from_parts(num, den))
    }

    /// `c ∏ l_k^{e_k}` for integer exponents.
    pub fn frac_monomial(&self, c: FieldElem, exps: &[i64]) -> BaseFraction {
        let mut num = Poly::constant(&self.field, self.nvars, c);
        let mut den = vec![0u32; self.forms.len()];
        for (k, &e) in exps.iter().enumerate() {
            if e >= 0 {
                num = num.mul(&self.field, &self.forms[k].pow(&self.field, e as u64));
            } else {
                den[k] = (-e) as u32;
            }
        }
        self.frac(num, den)
    }

    fn reduce(&self, mut f: BaseFraction) -> BaseFraction {
        if f.num.is_zero() {
            f.den.iter_mut().for_each(|e| *e = 0);
            return f;
        }
        for k in 0..self.forms.len() {
            while f.den[k] > 0 {
                let (quot, rem) = f.num.div_rem(&self.field, &self.forms[k]);
                if !rem.is_zero() {
                    break;
                }
                f.num = quot;
                f.den[k] -= 1;
            }
        }
        f
    }

    fn lift_to_den(&self, f: &BaseFraction, den: &[u32]) -> Poly<FieldElem> {
        let mut num = f.num.clone();
        for (k, (&target, &have)) in den.iter().zip(&f.den).enumerate() {
            if target > have {
                num = num.mul(&self.field, &self.forms[k].pow(&self.field, (target - have) as u64));
            }
        }
        num
    }

    pub fn frac_add(&self, a: &BaseFraction, b: &BaseFraction) -> BaseFraction {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let den: Vec<u32> = a.den.iter().zip(&b.den).map(|(x, y)| *x.max(y)).collect();
        let num = self.lift_to_den(a, &den).add(&self.field, &self.lift_to_den(b, &den));
        self.frac(num, den)
    }

    pub fn frac_neg(&self, a: &BaseFraction) -> BaseFraction {
        BaseFraction::from_parts(a.num.neg(&self.field), a.den.clone())
    }

    pub fn frac_sub(&self, a: &BaseFraction, b: &BaseFraction) -> BaseFraction {
        self.frac_add(a, &self.frac_neg(b))
    }

    pub fn frac_mul(&self, a: &BaseFraction, b: &BaseFraction) -> BaseFraction {
        if a.is_zero() || b.is_zero() {
            return self.frac_zero();
        }
        let den = a.den.iter().zip(&b.den).map(|(x, y)| x + y).collect();
        self.frac(a.num.mul(&self.field, &b.num), den)
    }

    pub fn frac_pow(&self, a: &BaseFraction, e: u64) -> BaseFraction {
        let den = a.den.iter().map(|&x| x * e as u32).collect();
        self.frac(a.num.pow(&self.field, e), den)
    }

    /// Order of vanishing along `l_k`.
    pub fn frac_v_h(&self, f: &BaseFraction, k: usize) -> Result<i64> {
        if f.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut num = f.num.clone();
        let mut ord = 0i64;
        loop {
            let (quot, rem) = num.div_rem(&self.field, &self.forms[k]);
            if !rem.is_zero() {
                break;
            }
            num = quot;
            ord += 1;
        }
        Ok(ord - f.den[k] as i64)
    }

    /// `-deg`, i.e. the order along the hyperplane at infinity.
    pub fn frac_v_inf(&self, f: &BaseFraction) -> Result<i64> {
        let deg = f.num.total_degree().ok_or(Error::ZeroElement)? as i64;
        Ok(f.den.iter().map(|&e| e as i64).sum::<i64>() - deg)
    }

    pub fn format_frac(&self, f: &BaseFraction) -> String {
        let names = self.variable_names();
        let num = f.num.format(&names, |c| self.field.format(c));
        let den: Vec<String> = f
            .den
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                let l = format!("({})", self.forms[k].format(&names, |c| self.field.format(c)));
                if e == 1 {
                    l
                } else {
                    format!("{l}^{e}")
                }
            })
            .collect();
        if den.is_empty() {
            num
        } else {
            format!("({num}) / {}", den.join("*"))
        }
    }

    // ---- cover elements ----

    pub fn element(&self, comps: Vec<BaseFraction>) -> CoverElement {
        assert_eq!(comps.len(), self.degree());
        CoverElement { comps }
    }

    pub fn zero(&self) -> CoverElement {
        CoverElement { comps: vec![self.frac_zero(); self.degree()] }
    }

    pub fn from_base(&self, f: BaseFraction) -> CoverElement {
        let mut x = self.zero();
        x.comps[0] = f;
        x
    }

    pub fn one(&self) -> CoverElement {
        self.from_base(self.frac_const(self.field.one()))
    }

    pub fn constant(&self, c: FieldElem) -> CoverElement {
        self.from_base(self.frac_const(c))
    }

    /// `f · t^j` for `0 <= j < Ñ`.
    pub fn t_power_times(&self, j: usize, f: BaseFraction) -> CoverElement {
        let mut x = self.zero();
        x.comps[j] = f;
        x
    }

    pub fn t(&self) -> CoverElement {
        self.t_power_times(1 % self.degree(), self.frac_const(self.field.one()))
    }

    pub fn add(&self, a: &CoverElement, b: &CoverElement) -> CoverElement {
        CoverElement { comps: a.comps.iter().zip(&b.comps).map(|(x, y)| self.frac_add(x, y)).collect() }
    }

    pub fn neg(&self, a: &CoverElement) -> CoverElement {
        CoverElement { comps: a.comps.iter().map(|x| self.frac_neg(x)).collect() }
    }

    pub fn mul(&self, a: &CoverElement, b: &CoverElement) -> CoverElement {
        let n = self.degree();
        // unreduced numerator and denominator per output component
        let mut acc: Vec<Option<(Poly<FieldElem>, Vec<u32>)>> = vec![None; n];
        for (i, x) in a.comps.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.comps.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let mut num = x.num.mul(&self.field, &y.num);
                if i + j >= n {
                    num = num.mul(&self.field, &self.p_poly);
                }
                let den: Vec<u32> = x.den.iter().zip(&y.den).map(|(u, v)| u + v).collect();
                let slot = &mut acc[(i + j) % n];
                *slot = Some(match slot.take() {
                    None => (num, den),
                    Some((old, old_den)) if old_den == den => (old.add(&self.field, &num), den),
                    Some((old, old_den)) => {
                        let common: Vec<u32> = old_den.iter().zip(&den).map(|(u, v)| *u.max(v)).collect();
                        let lifted_old = self.lift_to_den(&BaseFraction::from_parts(old, old_den), &common);
                        let lifted = self.lift_to_den(&BaseFraction::from_parts(num, den), &common);
                        (lifted_old.add(&self.field, &lifted), common)
                    }
                });
            }
        }
        let comps = acc
            .into_iter()
            .map(|slot| match slot {
                Some((num, den)) => self.frac(num, den),
                None => self.frac_zero(),
            })
            .collect();
        CoverElement { comps }
    }

    pub fn pow(&self, a: &CoverElement, mut e: u64) -> CoverElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// The automorphism `t ↦ ζ t`.
    pub fn conjugate(&self, a: &CoverElement, zeta: FieldElem) -> CoverElement {
        let comps = a
            .comps
            .iter()
            .enumerate()
            .map(|(i, f)| self.frac_mul(f, &self.frac_const(self.field.pow(zeta, i as u64))))
            .collect();
        CoverElement { comps }
    }

    /// Norm as the determinant of multiplication by `a` on the basis `1, t, ..., t^{Ñ-1}`.
    pub fn norm(&self, a: &CoverElement) -> BaseFraction {
        let n = self.degree();
        let len = self.forms.len();
        let mut den = vec![0u32; len];
        for f in &a.comps {
            for k in 0..len {
                den[k] = den[k].max(f.den[k]);
            }
        }
        let cleared: Vec<Poly<FieldElem>> = a.comps.iter().map(|f| self.lift_to_den(f, &den)).collect();
        // column j is a·t^j
        let matrix: Vec<Vec<Poly<FieldElem>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i >= j {
                            cleared[i - j].clone()
                        } else {
                            cleared[n + i - j].mul(&self.field, &self.p_poly)
                        }
                    })
                    .collect()
            })
            .collect();
        let det = berkowitz_det(&self.field, &matrix, self.nvars);
        self.frac(det, den.iter().map(|&e| e * n as u32).collect())
    }

    /// Norm as `∏_{ζ ∈ μ_Ñ} σ_ζ(a)`.
    pub fn norm_by_conjugates(&self, a: &CoverElement) -> BaseFraction {
        let n = self.degree();
        let zeta = self.field.root_of_unity(n as u64);
        let mut acc = self.one();
        for k in 0..n {
            acc = self.mul(&acc, &self.conjugate(a, self.field.pow(zeta, k as u64)));
        }
        debug_assert!(acc.comps[1..].iter().all(BaseFraction::is_zero));
        acc.comps[0].clone()
    }

    /// `v_H(Σ t^i f_i) = min_i (i/Ñ + v_H(f_i))` for the `k`-th form.
    pub fn v_h(&self, a: &CoverElement, k: usize) -> Result<Rational64> {
        let n = self.degree() as i64;
        a.comps
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(i, f)| Ok(Rational64::new(i as i64, n) + Rational64::from(self.frac_v_h(f, k)?)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .ok_or(Error::ZeroElement)
    }

    /// `v_∞(Σ t^i f_i) = min_i (i(1-Ñ)/Ñ + v_∞(f_i))`.
    pub fn v_inf(&self, a: &CoverElement) -> Result<Rational64> {
        let n = self.degree() as i64;
        a.comps
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(i, f)| Ok(Rational64::new(i as i64 * (1 - n), n) + Rational64::from(self.frac_v_inf(f)?)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .ok_or(Error::ZeroElement)
    }

    /// Indices attaining the minimum in [`CoverAlgebra::v_h`].
    pub fn v_h_minimizers(&self, a: &CoverElement, k: usize) -> Result<Vec<usize>> {
        let m = self.v_h(a, k)?;
        let n = self.degree() as i64;
        let mut out = Vec::new();
        for (i, f) in a.comps.iter().enumerate().filter(|(_, f)| !f.is_zero()) {
            if Rational64::new(i as i64, n) + Rational64::from(self.frac_v_h(f, k)?) == m {
                out.push(i);
            }
        }
        Ok(out)
    }

    pub fn random_frac(&self, rng: &mut impl Rng, max_degree: u32, max_terms: usize) -> BaseFraction {
        let terms = rng.gen_range(1..=max_terms);
        let mut num = Poly::zero(self.nvars);
        for _ in 0..terms {
            let exps: Vec<u32> = (0..self.nvars).map(|_| rng.gen_range(0..=max_degree)).collect();
            let c = FieldElem(rng.gen_range(1..self.field.order()));
            num = num.add(&self.field, &Poly::monomial(&self.field, exps, c));
        }
        if num.is_zero() {
            num = Poly::one(&self.field, self.nvars);
        }
        let den = (0..self.forms.len()).map(|_| if rng.gen_bool(0.2) { rng.gen_range(1..=2) } else { 0 }).collect();
        self.frac(num, den)
    }

    /// A random nonzero element with about half of its components nonzero,
    /// all over one common denominator.
    pub fn random_element(&self, rng: &mut impl Rng) -> CoverElement {
        let n = self.degree();
        let den: Vec<u32> =
            (0..self.forms.len()).map(|_| if rng.gen_bool(0.2) { rng.gen_range(1..=2) } else { 0 }).collect();
        let mut x = self.zero();
        let forced = rng.gen_range(0..n);
        for i in 0..n {
            if i == forced || rng.gen_bool(0.5) {
                let num = self.random_frac(rng, 2, 3).num;
                x.comps[i] = self.frac(num, den.clone());
            }
        }
        x
    }

    pub fn frac_to_json(&self, f: &BaseFraction) -> Value {
        let den: Vec<Value> = f
            .den
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                let coeffs: Vec<String> = self.form_coeffs[k].iter().map(|&c| self.field.format(c)).collect();
                json!([coeffs, e.to_string()])
            })
            .collect();
        json!({ "numerator": self.poly_to_json(&f.num), "denominator": den })
    }

    /// `{ "[e_0,...]": coefficient }`.
    pub fn poly_to_json(&self, p: &Poly<FieldElem>) -> Value {
        let mut map = Map::new();
        for (m, &c) in p.terms() {
            let key = format!("[{}]", m.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","));
            map.insert(key, Value::String(self.field.format(c)));
        }
        Value::Object(map)
    }
}

/// Division-free determinant (Berkowitz) over a polynomial ring.
fn berkowitz_det(field: &FiniteField, a: &[Vec<Poly<FieldElem>>], nvars: usize) -> Poly<FieldElem> {
    let n = a.len();
    let one = Poly::one(field, nvars);
    // v holds the characteristic polynomial of the leading r×r block, highest degree first
    let mut v = vec![one.clone()];
    for r in 0..n {
        let mut t = vec![one.clone(), a[r][r].neg(field)];
        let mut col: Vec<Poly<FieldElem>> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let rc = (0..r).fold(Poly::zero(nvars), |acc, i| acc.add(field, &a[r][i].mul(field, &col[i])));
            t.push(rc.neg(field));
            col = (0..r)
                .map(|i| (0..r).fold(Poly::zero(nvars), |acc, k| acc.add(field, &a[i][k].mul(field, &col[k]))))
                .collect();
        }
        let next: Vec<Poly<FieldElem>> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r))
                    .filter(|&j| i - j < t.len())
                    .fold(Poly::zero(nvars), |acc, j| acc.add(field, &t[i - j].mul(field, &v[j])))
            })
            .collect();
        v = next;
    }
    let det = v[n].clone();
    if n % 2 == 1 {
        det.neg(field)
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn algebra(p: u32, f: u32, d: u32) -> CoverAlgebra {
        CoverAlgebra::new(Params::unramified(p, f, d).unwrap()).unwrap()
    }

    #[test]
    fn forms_and_p() {
        let a = algebra(2, 1, 1);
        assert_eq!(a.forms().len(), 2);
        assert_eq!(a.p_poly().total_degree(), Some(2));
        let a = algebra(3, 1, 2);
        assert_eq!(a.forms().len(), 12);
        assert_eq!(a.p_poly().total_degree(), Some(12));
    }

    #[test]
    fn norm_of_t_and_constants() {
        for (p, f, d) in [(2, 1, 1), (3, 1, 1), (2, 1, 2)] {
            let a = algebra(p, f, d);
            let n = a.degree();
            let mut expected = a.frac_poly(a.p_poly().clone());
            if n % 2 == 0 {
                expected = a.frac_neg(&expected);
            }
            assert_eq!(a.norm(&a.t()), expected);
            let c = a.field().primitive_element();
            assert_eq!(a.norm(&a.constant(c)), a.frac_const(a.field().pow(c, n as u64)));
        }
    }

    #[test]
    fn valuations_of_t() {
        let a = algebra(2, 1, 1);
        let x = a.form_index(&[a.field().one(), a.field().zero()]).unwrap();
        assert_eq!(a.v_h(&a.t(), x).unwrap(), Rational64::new(1, 3));
        assert_eq!(a.v_inf(&a.t()).unwrap(), Rational64::new(-2, 3));
        let x1 = a.form_index(&[a.field().one(), a.field().one()]).unwrap();
        let g = a.frac_monomial(a.field().one(), &{
            let mut e = vec![0; 2];
            e[x] = 2;
            e[x1] = 1;
            e
        });
        assert_eq!(a.frac_v_h(&g, x).unwrap(), 2);
        assert_eq!(a.frac_v_inf(&g).unwrap(), -3);
        assert_eq!(a.v_h(&a.zero(), x), Err(Error::ZeroElement));
    }

    #[test]
    fn determinant_matches_conjugates() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, d) in [(2, 1), (3, 1)] {
            let a = algebra(p, 1, d);
            for _ in 0..5 {
                let x = a.random_element(&mut rng);
                assert_eq!(a.norm(&x), a.norm_by_conjugates(&x));
            }
        }
    }
}
