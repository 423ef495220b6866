//! The finite-level hyperplane sets `H_n = P^d(O_K/ϖ^n)`, their transition
//! maps, and the action of `GL_{d+1}(O_K/ϖ^n)`.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::base_rings::{Params, ResidueRing, ResidueRingElem, Ring};
use crate::error::{Error, Result};

/// Coefficient vector of a linear form with at least one unit entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnimodularVector {
    level: u32,
    entries: Vec<ResidueRingElem>,
}

impl UnimodularVector {
    pub fn new(ring: &ResidueRing, entries: Vec<ResidueRingElem>) -> Result<Self> {
        if !entries.iter().any(|&x| ring.is_unit(x)) {
            return Err(Error::NotUnimodular);
        }
        Ok(UnimodularVector { level: ring.level(), entries })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn entries(&self) -> &[ResidueRingElem] {
        &self.entries
    }
}

/// A point of `H_n`, stored as the canonical coefficient vector of `l_a`:
/// the first unit coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HyperplaneClass {
    level: u32,
    entries: Vec<ResidueRingElem>,
}

impl HyperplaneClass {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn entries(&self) -> &[ResidueRingElem] {
        &self.entries
    }

    /// Canonical class of an arbitrary vector over `ring`.
    pub fn from_entries(ring: &ResidueRing, entries: Vec<ResidueRingElem>) -> Result<Self> {
        Ok(canonicalize(ring, &UnimodularVector::new(ring, entries)?))
    }

    pub fn first_unit(&self, ring: &ResidueRing) -> usize {
        self.entries.iter().position(|&x| ring.is_unit(x)).expect("classes are unimodular")
    }

    /// Largest index carrying a unit entry.
    pub fn last_unit(&self, ring: &ResidueRing) -> usize {
        self.entries.iter().rposition(|&x| ring.is_unit(x)).expect("classes are unimodular")
    }

    /// Entries rendered as canonical coefficient strings.
    pub fn to_strings(&self, ring: &ResidueRing) -> Vec<String> {
        self.entries.iter().map(|&x| ring.format(x)).collect()
    }
}

/// Scale `v` by the inverse of its first unit entry.
pub fn canonicalize(ring: &ResidueRing, v: &UnimodularVector) -> HyperplaneClass {
    let first = v.entries.iter().find(|&&x| ring.is_unit(x)).copied().expect("unimodular");
    let s = ring.inv(first).expect("unit");
    HyperplaneClass { level: v.level, entries: v.entries.iter().map(|&x| ring.mul(x, s)).collect() }
}

/// All classes of `H_n`, sorted, with a lookup index.
#[derive(Debug, Clone)]
pub struct HyperplaneSet {
    params: Params,
    ring: ResidueRing,
    classes: Vec<HyperplaneClass>,
    index: HashMap<HyperplaneClass, usize>,
}

impl HyperplaneSet {
    pub fn new(params: Params, level: u32) -> Result<Self> {
        let ring = params.residue_ring(level)?;
        let dim = params.d as usize + 1;
        let non_units: Vec<ResidueRingElem> = ring.elements().filter(|&x| !ring.is_unit(x)).collect();
        let all: Vec<ResidueRingElem> = ring.elements().collect();
        let mut classes = Vec::new();
        // canonical vectors with first unit at position i: non-units, then 1, then anything
        for i in 0..dim {
            let mut pools: Vec<&[ResidueRingElem]> = Vec::with_capacity(dim);
            pools.extend(std::iter::repeat(non_units.as_slice()).take(i));
            pools.push(std::slice::from_ref(&ResidueRingElem(1)));
            pools.extend(std::iter::repeat(all.as_slice()).take(dim - i - 1));
            for entries in cartesian(&pools) {
                classes.push(HyperplaneClass { level, entries });
            }
        }
        classes.sort();
        let index = classes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Ok(HyperplaneSet { params, ring, classes, index })
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn level(&self) -> u32 {
        self.ring.level()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[HyperplaneClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &HyperplaneClass {
        &self.classes[i]
    }

    pub fn index_of(&self, h: &HyperplaneClass) -> Option<usize> {
        self.index.get(h).copied()
    }

    /// Index of the class of an arbitrary unimodular vector.
    pub fn locate(&self, entries: Vec<ResidueRingElem>) -> Result<usize> {
        let h = HyperplaneClass::from_entries(&self.ring, entries)?;
        Ok(self.index[&h])
    }

    /// Reduction of a class of this set to a lower level.
    pub fn reduce_class(&self, h: &HyperplaneClass, lower: &HyperplaneSet) -> Result<HyperplaneClass> {
        if h.level != self.level() || lower.level() > self.level() {
            return Err(Error::LevelMismatch(h.level, lower.level()));
        }
        let entries = h
            .entries
            .iter()
            .map(|&x| self.ring.reduce_to(x, &lower.ring))
            .collect::<Result<Vec<_>>>()?;
        // the first unit stays first and stays 1, so the image is canonical
        Ok(HyperplaneClass { level: lower.level(), entries })
    }

    /// `fibers[i]` lists the indices in `upper` of the classes reducing to class `i`.
    pub fn fibers(&self, upper: &HyperplaneSet) -> Result<Vec<Vec<usize>>> {
        let mut fibers = vec![Vec::new(); self.len()];
        for (j, h) in upper.classes.iter().enumerate() {
            let image = upper.reduce_class(h, self)?;
            fibers[self.index[&image]].push(j);
        }
        Ok(fibers)
    }

    /// Permutation of the classes induced by `g`: `perm[i]` is the index of `g·H_i`.
    pub fn permutation(&self, g: &Matrix) -> Result<Vec<usize>> {
        let ginv_t = g.inverse(&self.ring)?.transpose();
        Ok(self
            .classes
            .iter()
            .map(|h| {
                let image = ginv_t.apply(&self.ring, &h.entries);
                self.locate(image).expect("invertible maps preserve unimodularity")
            })
            .collect())
    }
}

fn cartesian(pools: &[&[ResidueRingElem]]) -> Vec<Vec<ResidueRingElem>> {
    let mut out = vec![Vec::with_capacity(pools.len())];
    for pool in pools {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                pool.iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// `H_n` as a sorted list.
pub fn enumerate_hyperplanes(params: Params, level: u32) -> Result<Vec<HyperplaneClass>> {
    Ok(HyperplaneSet::new(params, level)?.classes)
}

/// The classes at level `n + 1` reducing to `h`, built directly from lifts
/// `h̃ + ϖ^n w`.
pub fn fibers(params: Params, h: &HyperplaneClass) -> Result<Vec<HyperplaneClass>> {
    let lower = params.residue_ring(h.level)?;
    let upper = params.residue_ring(h.level + 1)?;
    let base: Vec<ResidueRingElem> =
        h.entries.iter().map(|&x| upper.from_coefficients(&lower.coefficients(x))).collect();
    let step = upper.pow(upper.uniformizer(), h.level as u64);
    let lifts: Vec<ResidueRingElem> =
        upper.residue_field().elements().map(|a| upper.mul(step, upper.teichmuller_lift(a))).collect();
    let pools: Vec<&[ResidueRingElem]> = vec![lifts.as_slice(); base.len()];
    let mut out: Vec<HyperplaneClass> = cartesian(&pools)
        .into_iter()
        .map(|w| {
            let v = base.iter().zip(&w).map(|(&b, &t)| upper.add(b, t)).collect();
            HyperplaneClass::from_entries(&upper, v).expect("lifts of unimodular vectors are unimodular")
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn reduce_class(params: Params, h: &HyperplaneClass) -> Result<HyperplaneClass> {
    if h.level < 2 {
        return Err(Error::LevelMismatch(h.level, 0));
    }
    let upper = params.residue_ring(h.level)?;
    let lower = params.residue_ring(h.level - 1)?;
    let entries = h.entries.iter().map(|&x| upper.reduce_to(x, &lower)).collect::<Result<_>>()?;
    Ok(HyperplaneClass { level: h.level - 1, entries })
}

/// Square matrix over a residue ring, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    level: u32,
    rows: Vec<Vec<ResidueRingElem>>,
}

impl Matrix {
    pub fn new(ring: &ResidueRing, rows: Vec<Vec<ResidueRingElem>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix { level: ring.level(), rows }
    }

    pub fn identity(ring: &ResidueRing, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
            .collect();
        Matrix::new(ring, rows)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn rows(&self) -> &[Vec<ResidueRingElem>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        Matrix { level: self.level, rows: (0..n).map(|i| (0..n).map(|j| self.rows[j][i]).collect()).collect() }
    }

    pub fn mul(&self, ring: &ResidueRing, other: &Matrix) -> Matrix {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(ring.zero(), |acc, k| ring.add(acc, ring.mul(self.rows[i][k], other.rows[k][j])))
                    })
                    .collect()
            })
            .collect();
        Matrix { level: self.level, rows }
    }

    pub fn apply(&self, ring: &ResidueRing, v: &[ResidueRingElem]) -> Vec<ResidueRingElem> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).fold(ring.zero(), |acc, (&a, &x)| ring.add(acc, ring.mul(a, x))))
            .collect()
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self, ring: &ResidueRing) -> ResidueRingElem {
        cofactor_det(ring, &self.rows)
    }

    /// Gauss–Jordan inverse with unit pivots.
    pub fn inverse(&self, ring: &ResidueRing) -> Result<Matrix> {
        let n = self.dim();
        let mut a = self.rows.clone();
        let mut inv = Matrix::identity(ring, n).rows;
        for col in 0..n {
            let pivot = (col..n).find(|&r| ring.is_unit(a[r][col])).ok_or(Error::SingularMatrix)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let s = ring.inv(a[col][col]).expect("unit pivot");
            for j in 0..n {
                a[col][j] = ring.mul(a[col][j], s);
                inv[col][j] = ring.mul(inv[col][j], s);
            }
            for r in 0..n {
                if r == col || ring.is_zero(a[r][col]) {
                    continue;
                }
                let factor = a[r][col];
                for j in 0..n {
                    a[r][j] = ring.sub(a[r][j], ring.mul(factor, a[col][j]));
                    inv[r][j] = ring.sub(inv[r][j], ring.mul(factor, inv[col][j]));
                }
            }
        }
        Ok(Matrix { level: self.level, rows: inv })
    }

    pub fn reduce_to(&self, ring: &ResidueRing, lower: &ResidueRing) -> Result<Matrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| ring.reduce_to(x, lower)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix { level: lower.level(), rows })
    }
}

fn cofactor_det(ring: &ResidueRing, rows: &[Vec<ResidueRingElem>]) -> ResidueRingElem {
    let n = rows.len();
    if n == 1 {
        return rows[0][0];
    }
    // cofactor expansion along the first row
    let mut acc = ring.zero();
    for j in 0..n {
        if ring.is_zero(rows[0][j]) {
            continue;
        }
        let minor: Vec<Vec<ResidueRingElem>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
            .collect();
        let term = ring.mul(rows[0][j], cofactor_det(ring, &minor));
        acc = if j % 2 == 0 { ring.add(acc, term) } else { ring.sub(acc, term) };
    }
    acc
}

/// Action of `g` on hyperplanes: `ker(l_a) ↦ g·ker(l_a) = ker(l_a ∘ g^{-1})`,
/// i.e. `a ↦ (g^{-1})^T a`.
pub fn gl_act(ring: &ResidueRing, g: &Matrix, h: &HyperplaneClass) -> Result<HyperplaneClass> {
    if g.level != h.level || ring.level() != h.level {
        return Err(Error::LevelMismatch(g.level, h.level));
    }
    let ginv_t = g.inverse(ring)?.transpose();
    HyperplaneClass::from_entries(ring, ginv_t.apply(ring, &h.entries))
}

/// A uniformly random element of `GL_{d+1}(O/ϖ^n)`, deterministic in `seed`.
pub fn random_gl(params: Params, level: u32, seed: u64) -> Result<Matrix> {
    let ring = params.residue_ring(level)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_gl_with(&ring, params.d as usize + 1, &mut rng))
}

pub fn random_gl_with(ring: &ResidueRing, dim: usize, rng: &mut impl rand::Rng) -> Matrix {
    loop {
        let rows = (0..dim)
            .map(|_| (0..dim).map(|_| ResidueRingElem(rng.gen_range(0..ring.size()))).collect())
            .collect();
        let g = Matrix::new(ring, rows);
        if ring.is_unit(g.det(ring)) {
            return g;
        }
    }
}

/// `count` seeded elements of `GL_{d+1}(O/ϖ^n)`.
pub fn random_gl_family(params: Params, level: u32, seed: u64, count: usize) -> Result<Vec<Matrix>> {
    let ring = params.residue_ring(level)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| random_gl_with(&ring, params.d as usize + 1, &mut rng)).collect())
}
