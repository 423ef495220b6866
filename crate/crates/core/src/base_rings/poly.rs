use std::collections::BTreeMap;

use super::{Field, Ring};

/// Sparse multivariate polynomial. Exponent vectors are compared
/// lexicographically with the first variable most significant, which is also
/// the monomial order used by [`Poly::div_rem`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, E>,
}

impl<E: Copy + Eq> Poly<E> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial<R: Ring<Elem = E>>(ring: &R, exps: Vec<u32>, c: E) -> Self {
        let mut p = Self::zero(exps.len());
        if !ring.is_zero(c) {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn constant<R: Ring<Elem = E>>(ring: &R, nvars: usize, c: E) -> Self {
        Self::monomial(ring, vec![0; nvars], c)
    }

    pub fn one<R: Ring<Elem = E>>(ring: &R, nvars: usize) -> Self {
        Self::constant(ring, nvars, ring.one())
    }

    pub fn var<R: Ring<Elem = E>>(ring: &R, nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(ring, exps, ring.one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff<R: Ring<Elem = E>>(&self, ring: &R, exps: &[u32]) -> E {
        self.terms.get(exps).copied().unwrap_or_else(|| ring.zero())
    }

    /// Largest term in lex order.
    pub fn leading(&self) -> Option<(&Vec<u32>, &E)> {
        self.terms.last_key_value()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Constant polynomial's value, if the polynomial is constant.
    pub fn as_constant<R: Ring<Elem = E>>(&self, ring: &R) -> Option<E> {
        match self.terms.len() {
            0 => Some(ring.zero()),
            1 => self.terms.get(&vec![0; self.nvars]).copied(),
            _ => None,
        }
    }

    fn add_term<R: Ring<Elem = E>>(&mut self, ring: &R, exps: Vec<u32>, c: E) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                if !ring.is_zero(c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = ring.add(*o.get(), c);
                if ring.is_zero(s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(ring, m.clone(), c);
        }
        out
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), ring.neg(c))).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(ring, m.clone(), ring.neg(c));
        }
        out
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: E) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, &a) in &self.terms {
            out.add_term(ring, m.clone(), ring.mul(a, c));
        }
        out
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, &a) in &self.terms {
            for (n, &b) in &other.terms {
                let exps = m.iter().zip(n).map(|(x, y)| x + y).collect();
                out.add_term(ring, exps, ring.mul(a, b));
            }
        }
        out
    }

    pub fn pow<R: Ring<Elem = E>>(&self, ring: &R, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(ring, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ring, &base);
            }
        }
        acc
    }

    pub fn eval<R: Ring<Elem = E>>(&self, ring: &R, point: &[E]) -> E {
        let mut acc = ring.zero();
        for (m, &c) in &self.terms {
            let mut t = c;
            for (&x, &k) in point.iter().zip(m) {
                t = ring.mul(t, ring.pow(x, k as u64));
            }
            acc = ring.add(acc, t);
        }
        acc
    }

    /// Coefficient-wise image under a ring map.
    pub fn map_coeffs<R2: Ring>(&self, target: &R2, f: impl Fn(E) -> R2::Elem) -> Poly<R2::Elem> {
        let mut out = Poly::zero(self.nvars);
        for (m, &c) in &self.terms {
            out.add_term(target, m.clone(), f(c));
        }
        out
    }

    /// Division by a single divisor over a field. The remainder has no term
    /// divisible by the leading monomial of `g`; since `{g}` is a Gröbner basis
    /// of `(g)`, `g | self` iff the remainder vanishes.
    pub fn div_rem<F: Field<Elem = E>>(&self, field: &F, g: &Self) -> (Self, Self) {
        let (lm, &lc) = g.leading().expect("division by the zero polynomial");
        let lm = lm.clone();
        let lc_inv = field.inv(lc).expect("leading coefficient is nonzero");
        let mut rest = self.clone();
        let mut quot = Self::zero(self.nvars);
        let mut rem = Self::zero(self.nvars);
        while let Some((m, &c)) = rest.terms.last_key_value() {
            let m = m.clone();
            if m.iter().zip(&lm).all(|(a, b)| a >= b) {
                let shift: Vec<u32> = m.iter().zip(&lm).map(|(a, b)| a - b).collect();
                let t = Self::monomial(field, shift, field.mul(c, lc_inv));
                rest = rest.sub(field, &t.mul(field, g));
                quot = quot.add(field, &t);
            } else {
                rest.terms.remove(&m);
                rem.terms.insert(m, c);
            }
        }
        (quot, rem)
    }

    /// Human-readable form such as `1 + 2*X0^2*X1`.
    pub fn format(&self, names: &[String], coeff: impl Fn(E) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, &c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            let cs = coeff(c);
            let is_const = m.iter().all(|&k| k == 0);
            if cs != "1" || is_const {
                factors.push(if cs.contains('+') { format!("({cs})") } else { cs });
            }
            for (i, &k) in m.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    k => factors.push(format!("{}^{k}", names[i])),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_rings::FiniteField;

    #[test]
    fn arithmetic_and_division() {
        let f = FiniteField::new(3, 1).unwrap();
        let x = Poly::var(&f, 2, 0);
        let y = Poly::var(&f, 2, 1);
        let one = Poly::one(&f, 2);
        let a = x.add(&f, &y).add(&f, &one);
        let b = x.sub(&f, &y);
        let prod = a.mul(&f, &b);
        let (q, r) = prod.div_rem(&f, &a);
        assert!(r.is_zero());
        assert_eq!(q, b);
        let (_, r) = prod.add(&f, &one).div_rem(&f, &a);
        assert!(!r.is_zero());
        assert_eq!(a.pow(&f, 3), x.pow(&f, 3).add(&f, &y.pow(&f, 3)).add(&f, &one));
        assert_eq!(prod.total_degree(), Some(2));
    }

    #[test]
    fn evaluation() {
        let f = FiniteField::new(5, 1).unwrap();
        let x = Poly::var(&f, 1, 0);
        let p = x.pow(&f, 2).add(&f, &Poly::constant(&f, 1, f.from_int(3)));
        assert_eq!(p.eval(&f, &[f.from_int(2)]), f.from_int(2));
        let names = vec!["X".to_string()];
        assert_eq!(p.format(&names, |c| c.0.to_string()), "X^2 + 3");
    }
}
