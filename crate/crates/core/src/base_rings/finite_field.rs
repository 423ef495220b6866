use super::{is_prime, Ring};
use crate::error::{Error, Result};

/// Element of a [`FiniteField`], stored as the base-`p` code of its
/// coefficient vector in the power basis (constant term is the lowest digit).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub u32);

/// `GF(p^m)` as `F_p[x]/(g)` where `g` is the smallest monic irreducible of
/// degree `m` when coefficient vectors are compared as base-`p` integers.
/// Multiplication goes through discrete log tables.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    degree: u32,
    order: u32,
    // lower coefficients of the monic modulus: x^m = -(c_0 + ... + c_{m-1} x^{m-1})
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

const MAX_ORDER: u64 = 1 << 22;

impl FiniteField {
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        if !is_prime(p as u64) || degree == 0 {
            return Err(Error::InvalidParams(format!("no field of order {p}^{degree}")));
        }
        let order = (p as u64).checked_pow(degree).filter(|&o| o <= MAX_ORDER).ok_or_else(|| {
            Error::InvalidParams(format!("field of order {p}^{degree} is too large to tabulate"))
        })? as u32;
        let modulus = smallest_irreducible(p, degree);
        let mut field = FiniteField { p, degree, order, modulus, exp: Vec::new(), log: Vec::new() };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let n = (self.order - 1) as usize;
        let one = 1u32;
        for g in 2.min(self.order - 1)..self.order {
            let mut exp = Vec::with_capacity(n);
            let mut x = one;
            loop {
                exp.push(x);
                x = self.mul_slow(x, g);
                if x == one || exp.len() > n {
                    break;
                }
            }
            if exp.len() == n {
                let mut log = vec![0u32; self.order as usize];
                for (k, &v) in exp.iter().enumerate() {
                    log[v as usize] = k as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        // order 2: the multiplicative group is trivial
        self.exp = vec![1];
        self.log = vec![0, 0];
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let m = self.degree as usize;
        let p = self.p as u64;
        let (da, db) = (self.digits(FieldElem(a)), self.digits(FieldElem(b)));
        let mut prod = vec![0u64; 2 * m - 1];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &g) in self.modulus.iter().enumerate() {
                prod[k - m + i] = (prod[k - m + i] + (p - c) * g as u64) % p;
            }
        }
        let digits: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
        self.from_digits(&digits).0
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Lower coefficients `c_0..c_{m-1}` of the defining polynomial
    /// `x^m + c_{m-1} x^{m-1} + ... + c_0`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.order).map(FieldElem)
    }

    pub fn elem(&self, code: u32) -> FieldElem {
        assert!(code < self.order, "code {code} out of range for GF({})", self.order);
        FieldElem(code)
    }

    pub fn digits(&self, x: FieldElem) -> Vec<u32> {
        let mut code = x.0;
        (0..self.degree)
            .map(|_| {
                let d = code % self.p;
                code /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> FieldElem {
        let mut code = 0u32;
        for &d in digits.iter().rev() {
            code = code * self.p + d % self.p;
        }
        FieldElem(code)
    }

    /// The class of `x` in `F_p[x]/(g)`.
    pub fn generator(&self) -> FieldElem {
        if self.degree == 1 {
            FieldElem(0)
        } else {
            FieldElem(self.p)
        }
    }

    pub fn primitive_element(&self) -> FieldElem {
        FieldElem(self.exp[1 % self.exp.len()])
    }

    pub fn log(&self, x: FieldElem) -> Option<u32> {
        (x.0 != 0).then(|| self.log[x.0 as usize])
    }

    pub fn exp(&self, k: u64) -> FieldElem {
        FieldElem(self.exp[(k % self.exp.len() as u64) as usize])
    }

    pub fn inv(&self, x: FieldElem) -> Option<FieldElem> {
        let l = self.log(x)? as u64;
        let n = self.exp.len() as u64;
        Some(self.exp((n - l) % n))
    }

    /// An element of exact multiplicative order `k`; `k` must divide `|F^*|`.
    pub fn root_of_unity(&self, k: u64) -> FieldElem {
        let n = (self.order - 1) as u64;
        assert!(k > 0 && n % k == 0, "{k} does not divide {n}");
        self.exp(n / k)
    }

    /// The subfield of order `p^sub`, as `{x : x^{p^sub} = x}` in code order.
    pub fn subfield(&self, sub: u32) -> Vec<FieldElem> {
        assert!(sub > 0 && self.degree % sub == 0, "GF({}^{sub}) is not a subfield", self.p);
        let q = (self.p as u64).pow(sub);
        self.elements().filter(|&x| self.pow(x, q) == x).collect()
    }

    pub fn frobenius(&self, x: FieldElem) -> FieldElem {
        self.pow(x, self.p as u64)
    }

    /// Polynomial-notation rendering in the generator `w`, e.g. `1+2w^2`.
    pub fn format(&self, x: FieldElem) -> String {
        if self.degree == 1 {
            return x.0.to_string();
        }
        let terms: Vec<String> = self
            .digits(x)
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .map(|(i, c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "w".to_string(),
                (1, c) => format!("{c}w"),
                (i, 1) => format!("w^{i}"),
                (i, c) => format!("{c}w^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl Ring for FiniteField {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if self.degree == 1 {
            return FieldElem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    fn neg(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        let n = self.exp.len() as u32;
        let k = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElem(self.exp[(if k >= n { k - n } else { k }) as usize])
    }

    fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem(1);
        }
        match self.log(a) {
            None => FieldElem(0),
            Some(l) => self.exp(l as u64 * (e % self.exp.len() as u64)),
        }
    }

    fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u32)
    }
}

fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for code in 0..count {
        let mut lower = Vec::with_capacity(m as usize);
        let mut c = code;
        for _ in 0..m {
            lower.push((c % p as u64) as u32);
            c /= p as u64;
        }
        let mut g = lower.clone();
        g.push(1);
        if is_irreducible(&g, p) {
            return lower;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

// trial division by every monic polynomial of degree at most deg(g)/2
fn is_irreducible(g: &[u32], p: u32) -> bool {
    let m = g.len() - 1;
    if m == 1 {
        return true;
    }
    for k in 1..=m / 2 {
        for code in 0..(p as u64).pow(k as u32) {
            let mut h = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                h.push((c % p as u64) as u32);
                c /= p as u64;
            }
            h.push(1);
            if rem_monic(g, &h, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn rem_monic(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let k = b.len() - 1;
    let p = p as u64;
    for top in (k..r.len()).rev() {
        let c = r[top] % p;
        if c == 0 {
            continue;
        }
        for (i, &bc) in b.iter().enumerate() {
            let idx = top - k + i;
            r[idx] = (r[idx] + (p - c) * bc as u64) % p;
        }
    }
    r.truncate(k);
    r.into_iter().map(|c| c as u32).collect()
}
