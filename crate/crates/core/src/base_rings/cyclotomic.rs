use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `Q(ζ_m) = Q[x]/(Φ_m)` with exact rational coordinates in the power basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u64,
    // Φ_m, low degree first, monic
    phi: Vec<BigInt>,
}

/// Element of a [`CyclotomicField`]; always reduced, one coordinate per
/// power `1, ζ, ..., ζ^{φ(m)-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicElem {
    coeffs: Vec<BigRational>,
}

impl CyclotomicElem {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }
}

fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    // x^m - 1 divided by Φ_k for every proper divisor k
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for k in (1..m).filter(|k| m % k == 0) {
        num = div_monic(&num, &cyclotomic_poly(k));
    }
    num
}

fn div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let k = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - k];
    for top in (k..r.len()).rev() {
        let c = r[top].clone();
        if c.is_zero() {
            continue;
        }
        for (i, bc) in b.iter().enumerate() {
            r[top - k + i] -= &c * bc;
        }
        q[top - k] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

impl CyclotomicField {
    pub fn new(order: u64) -> Self {
        assert!(order > 0);
        CyclotomicField { order, phi: cyclotomic_poly(order) }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.phi
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> CyclotomicElem {
        let k = self.degree();
        for top in (k..v.len()).rev() {
            let c = v[top].clone();
            if c.is_zero() {
                continue;
            }
            for (i, pc) in self.phi.iter().enumerate() {
                v[top - k + i] -= &c * BigRational::from_integer(pc.clone());
            }
        }
        v.resize(k, BigRational::zero());
        CyclotomicElem { coeffs: v }
    }

    pub fn zero(&self) -> CyclotomicElem {
        CyclotomicElem { coeffs: vec![BigRational::zero(); self.degree()] }
    }

    pub fn one(&self) -> CyclotomicElem {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, c: BigRational) -> CyclotomicElem {
        let mut v = vec![BigRational::zero(); self.degree()];
        v[0] = c;
        CyclotomicElem { coeffs: v }
    }

    pub fn from_int(&self, n: i64) -> CyclotomicElem {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    /// `ζ^k` for the fixed primitive root `ζ = x mod Φ_m`.
    pub fn zeta_pow(&self, k: i64) -> CyclotomicElem {
        let k = k.rem_euclid(self.order as i64) as usize;
        let mut v = vec![BigRational::zero(); k.max(self.degree()) + 1];
        v[k] = BigRational::one();
        self.reduce(v)
    }

    pub fn add(&self, a: &CyclotomicElem, b: &CyclotomicElem) -> CyclotomicElem {
        CyclotomicElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &CyclotomicElem, b: &CyclotomicElem) -> CyclotomicElem {
        CyclotomicElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }

    pub fn neg(&self, a: &CyclotomicElem) -> CyclotomicElem {
        CyclotomicElem { coeffs: a.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, a: &CyclotomicElem, c: &BigRational) -> CyclotomicElem {
        CyclotomicElem { coeffs: a.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, a: &CyclotomicElem, b: &CyclotomicElem) -> CyclotomicElem {
        let k = self.degree();
        let mut v = vec![BigRational::zero(); 2 * k - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        self.reduce(v)
    }

    pub fn pow(&self, a: &CyclotomicElem, mut e: u64) -> CyclotomicElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by solving `a · y = 1` in the power basis.
    pub fn inv(&self, a: &CyclotomicElem) -> Option<CyclotomicElem> {
        if a.is_zero() {
            return None;
        }
        let k = self.degree();
        // column j holds the coordinates of a·ζ^j
        let cols: Vec<CyclotomicElem> = (0..k).map(|j| self.mul(a, &self.zeta_pow(j as i64))).collect();
        let mut rows: Vec<Vec<BigRational>> = (0..k)
            .map(|i| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c.coeffs[i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..k {
            let pivot = (col..k).find(|&r| !rows[r][col].is_zero())?;
            rows.swap(col, pivot);
            let inv = rows[col][col].recip();
            for x in rows[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..k {
                if r != col && !rows[r][col].is_zero() {
                    let factor = rows[r][col].clone();
                    for c in col..=k {
                        let t = &rows[col][c] * &factor;
                        rows[r][c] -= t;
                    }
                }
            }
        }
        Some(CyclotomicElem { coeffs: rows.into_iter().map(|r| r[k].clone()).collect() })
    }

    /// Rendering in `z`, e.g. `1/2 + 1/2*z`.
    pub fn format(&self, a: &CyclotomicElem) -> String {
        let terms: Vec<String> = a
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let cs = if c.is_negative() { format!("({c})") } else { c.to_string() };
                match i {
                    0 => cs,
                    1 => format!("{cs}*z"),
                    _ => format!("{cs}*z^{i}"),
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |m| CyclotomicField::new(m).modulus().iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_relations() {
        for q in [3u64, 4, 5, 7, 8, 9] {
            let m = q - 1;
            let k = CyclotomicField::new(m);
            assert_eq!(k.zeta_pow(m as i64), k.one());
            let mut sum = k.zero();
            for j in 0..m {
                sum = k.add(&sum, &k.zeta_pow(j as i64));
            }
            assert!(sum.is_zero(), "q = {q}");
        }
    }

    #[test]
    fn inverses() {
        let k = CyclotomicField::new(8);
        let a = k.add(&k.from_int(2), &k.zeta_pow(3));
        let b = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &b), k.one());
        assert!(k.inv(&k.zero()).is_none());
    }
}
