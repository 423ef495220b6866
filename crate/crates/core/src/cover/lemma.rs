use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CoverAlgebra;
use crate::base_rings::{FieldElem, Ring};
use crate::error::Result;

/// Outcome of checking "`Nrm(v) = 1` iff `v` is an `Ñ`-th root of unity".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormLemmaReport {
    /// `Nrm(ζ) = 1` for every `ζ ∈ μ_Ñ(F)`.
    pub roots_have_norm_one: bool,
    pub roots_checked: usize,
    /// No sampled non-constant unit `c t^j ∏ l_H^{e_H}` has norm 1.
    pub nonconstant_units_have_other_norms: bool,
    pub units_checked: usize,
    /// `v_H(Nrm f) = Ñ v_H(f)` on every sampled `f` and form.
    pub norm_scales_valuations: bool,
    pub elements_checked: usize,
}

impl NormLemmaReport {
    pub fn ok(&self) -> bool {
        self.roots_have_norm_one && self.nonconstant_units_have_other_norms && self.norm_scales_valuations
    }
}

pub fn check_norm_one_is_root_of_unity(algebra: &CoverAlgebra, samples: usize, seed: u64) -> Result<NormLemmaReport> {
    let field = algebra.field();
    let n = algebra.degree();
    let one = algebra.frac_const(field.one());
    let roots: Vec<FieldElem> = field.elements().filter(|&z| z.0 != 0 && field.pow(z, n as u64) == field.one()).collect();
    let roots_have_norm_one = roots.iter().all(|&z| algebra.norm(&algebra.constant(z)) == one);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms = algebra.forms().len();
    let mut nonconstant_units_have_other_norms = true;
    for _ in 0..samples {
        let j = rng.gen_range(0..n);
        let mut exps: Vec<i64> = (0..forms).map(|_| if rng.gen_bool(0.3) { rng.gen_range(-2..=2) } else { 0 }).collect();
        if j == 0 && exps.iter().all(|&e| e == 0) {
            exps[rng.gen_range(0..forms)] = 1;
        }
        let c = FieldElem(rng.gen_range(1..field.order()));
        let v = algebra.t_power_times(j, algebra.frac_monomial(c, &exps));
        if algebra.norm(&v) == one {
            nonconstant_units_have_other_norms = false;
        }
    }

    let mut norm_scales_valuations = true;
    for _ in 0..samples {
        let f = algebra.random_element(&mut rng);
        let nf = algebra.norm(&f);
        for k in 0..forms {
            let lhs = algebra.frac_v_h(&nf, k)?;
            let rhs = algebra.v_h(&f, k)? * n as i64;
            if !rhs.is_integer() || lhs != rhs.to_integer() {
                norm_scales_valuations = false;
            }
        }
    }

    Ok(NormLemmaReport {
        roots_have_norm_one,
        roots_checked: roots.len(),
        nonconstant_units_have_other_norms,
        units_checked: samples,
        norm_scales_valuations,
        elements_checked: samples,
    })
}
