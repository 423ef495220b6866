//! JSON reports behind each command, and the full acceptance suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::base_rings::Params;
use crate::building::{standard_simplex, covering_presentation, SimplexPresentation, SimplexType};
use crate::cover::{check_norm_one_is_root_of_unity, CoverAlgebra};
use crate::divisor::{
    canonical_generator, invariant_class_enumeration, is_invariant, kummer_class_sigma1, pi0, DivisorVector,
    ScalarField,
};
use crate::error::Result;
use crate::hyperplanes::{random_gl_family, HyperplaneSet};
use crate::idempotents::{
    idempotent_report, lagrange, ComponentFunction, ComponentRing, RationalDivisor, UnitModel,
};
use crate::simplex_units::{
    restrict_to_vertex, solve_witness, ui_family, verify_global_section, verify_generic_fiber_congruence, vtilde_invariant,
    RaynaudDatum, Symbol, SymbolUnit,
};

/// A verification verdict with its JSON payload.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub ok: bool,
    pub value: Value,
}

impl Outcome {
    fn new(ok: bool, value: Value) -> Self {
        Outcome { ok, value }
    }
}

fn params_json(params: Params) -> Value {
    json!({
        "p": params.p.to_string(),
        "f": params.f.to_string(),
        "e": params.e.to_string(),
        "d": params.d.to_string(),
    })
}

pub fn expected_hyperplane_count(params: Params, level: u32) -> u64 {
    params.component_degree() * params.q().pow((level - 1) * params.d)
}

pub fn hyperplanes(params: Params, level: u32) -> Result<Outcome> {
    let set = HyperplaneSet::new(params, level)?;
    let expected = expected_hyperplane_count(params, level);
    let classes: Vec<Vec<String>> = set.classes().iter().map(|h| h.to_strings(set.ring())).collect();
    Ok(Outcome::new(
        set.len() as u64 == expected,
        json!({
            "params": params_json(params),
            "level": level.to_string(),
            "count": set.len().to_string(),
            "expected_count": expected.to_string(),
            "classes": classes,
        }),
    ))
}

pub fn simplex(params: Params, simplex_type: &SimplexType) -> Result<Outcome> {
    let pres = standard_simplex(params, simplex_type)?;
    Ok(Outcome::new(true, pres.to_json()))
}

pub fn covering(params: Params) -> Result<Outcome> {
    let pres = standard_simplex(params, &SimplexType::maximal(params.d))?;
    let x = covering_presentation(&pres)?;
    Ok(Outcome::new(true, x.to_json(&pres)))
}

/// Class of the first covering on the level-`n` tube (divisor on `H_{n+1}`).
pub fn kummer_class(params: Params, n: u32) -> Result<Outcome> {
    let set = HyperplaneSet::shared(params, n + 1)?;
    Ok(Outcome::new(true, kummer_class_sigma1(&set).to_json()))
}

pub fn invariants(params: Params, n_max: u32) -> Result<Outcome> {
    let e = invariant_class_enumeration(params, n_max)?;
    let show = |v: &Vec<u64>| v.iter().map(u64::to_string).collect::<Vec<_>>();
    Ok(Outcome::new(
        e.cyclic,
        json!({
            "params": params_json(params),
            "modulus": e.modulus.to_string(),
            "n_max": e.n_max.to_string(),
            "generator": show(&e.generator),
            "solution_count": e.solutions.len().to_string(),
            "solutions": e.solutions.iter().map(show).collect::<Vec<_>>(),
            "cyclic": e.cyclic,
        }),
    ))
}

pub fn pi0_report(params: Params, n: u32) -> Result<Outcome> {
    let set = HyperplaneSet::shared(params, n + 1)?;
    let class = kummer_class_sigma1(&set);
    let over_c = pi0(&class, ScalarField::C);
    let over_k = pi0(&class, ScalarField::KBreve);
    Ok(Outcome::new(
        over_c == params.q() - 1 && over_k == 1,
        json!({ "pi0_over_C": over_c.to_string(), "pi0_over_K_breve": over_k.to_string() }),
    ))
}

fn maximal(params: Params) -> Result<SimplexPresentation> {
    standard_simplex(params, &SimplexType::maximal(params.d))
}

pub fn generic_fiber_congruence(params: Params) -> Result<Outcome> {
    let pres = maximal(params)?;
    let r = verify_generic_fiber_congruence(&pres)?;
    let n = params.galois_order() as i64;
    let expected: Vec<i64> = (0..params.d).map(|j| (params.q() as i64).pow(j + 1) - 1).map(|e| e % n).collect();
    let exponents_ok = r.x_exponents == expected;
    let residues: Vec<Value> = r
        .residues
        .iter()
        .map(|(s, e)| json!([s.map(|s| pres.symbol_name(s)).unwrap_or_else(|| "pi".into()), e.to_string()]))
        .collect();
    Ok(Outcome::new(
        r.ok && exponents_ok,
        json!({
            "ok": r.ok && exponents_ok,
            "bijective": r.bijective,
            "x_exponents": r.x_exponents.iter().map(i64::to_string).collect::<Vec<_>>(),
            "expected_x_exponents": expected.iter().map(i64::to_string).collect::<Vec<_>>(),
            "residues": residues,
        }),
    ))
}

pub fn vertex_consistency(params: Params) -> Result<Outcome> {
    let pres = maximal(params)?;
    let set = HyperplaneSet::shared(params, 1)?;
    let n = params.galois_order();
    let target = SymbolUnit::uniformizer_power(1).mul(&vtilde_invariant(&ui_family(&pres)?));
    let (pi, divisor) = restrict_to_vertex(&pres, &set, &target)?;
    let expected = DivisorVector::constant(set.clone(), n, params.q() as i64 - 1)?;
    let reduced = divisor.reduce_mod(n)?;
    let ok = pi.rem_euclid(n as i64) == 1 && reduced == expected;
    let global = verify_global_section(&pres)?;
    Ok(Outcome::new(
        ok && global.ok,
        json!({
            "ok": ok,
            "pi_exponent": pi.rem_euclid(n as i64).to_string(),
            "restricted": reduced.to_json(),
            "expected": expected.to_json(),
            "global_section": global.ok,
            "product_of_units_trivial": global.product_of_units_trivial,
        }),
    ))
}

pub fn norm_lemma(params: Params, samples: usize, seed: u64) -> Result<Outcome> {
    let algebra = CoverAlgebra::new(params)?;
    let n = algebra.degree();
    let mut expected = algebra.frac_poly(algebra.p_poly().clone());
    if n % 2 == 0 {
        expected = algebra.frac_neg(&expected);
    }
    let norm_t = algebra.norm(&algebra.t());
    let norm_t_ok = norm_t == expected;
    let r = check_norm_one_is_root_of_unity(&algebra, samples, seed)?;
    Ok(Outcome::new(
        norm_t_ok && r.ok(),
        json!({
            "degree": n.to_string(),
            "norm_of_t": algebra.frac_to_json(&norm_t),
            "norm_of_t_matches": norm_t_ok,
            "roots_have_norm_one": r.roots_have_norm_one,
            "roots_checked": r.roots_checked.to_string(),
            "nonconstant_units_have_other_norms": r.nonconstant_units_have_other_norms,
            "units_checked": r.units_checked.to_string(),
            "norm_scales_valuations": r.norm_scales_valuations,
            "elements_checked": r.elements_checked.to_string(),
        }),
    ))
}

pub fn idempotents(params: Params) -> Result<Outcome> {
    let q = params.q();
    let report = idempotent_report(q);
    let field = lagrange(q, 0).field();
    let polys: Vec<Value> = (0..q - 1)
        .map(|a| {
            let l = lagrange(q, a);
            json!({
                "root": field.format(&field.zeta_pow(a as i64)),
                "coefficients": l.coeffs.iter().map(|c| field.format(c)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let ring = ComponentRing::new(params, 0)?;
    let laws = component_laws(&ring, 2, 0)?;
    let ok = report.ok() && laws;
    Ok(Outcome::new(
        ok,
        json!({
            "q": q.to_string(),
            "lagrange": polys,
            "interpolates": report.interpolates,
            "idempotent": report.idempotent,
            "orthogonal": report.orthogonal,
            "sum_is_one": report.sum_is_one,
            "monic": report.monic,
            "t": ring.to_json(&ring.t()),
            "base_unit": ring.base_unit().to_json(),
            "component_laws": laws,
        }),
    ))
}

fn random_unit_model(ring: &ComponentRing, rng: &mut impl Rng) -> Result<UnitModel> {
    let len = ring.set().len();
    let mut coeffs: Vec<i64> = (0..len).map(|_| rng.gen_range(-2..=2)).collect();
    let total: i64 = coeffs.iter().sum();
    coeffs[0] -= total;
    ring.unit_model(rng.gen_range(-2..=2), coeffs)
}

fn t_power_times(ring: &ComponentRing, j: u64, v: &UnitModel) -> Result<ComponentFunction> {
    let tj = ring.pow(&ring.t(), j as i64)?;
    ring.mul(&tj, &ring.from_unit(v.clone()))
}

fn rational_sum(
    a: &[Option<RationalDivisor>],
    b: &[Option<RationalDivisor>],
) -> Vec<Option<RationalDivisor>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| match (x, y) {
            (Some(x), Some(y)) => Some(RationalDivisor {
                pi: x.pi + y.pi,
                coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a + b).collect(),
            }),
            _ => None,
        })
        .collect()
}

/// Group laws, carry rule and unique decomposition over all `(j, j')`, with
/// `samples` random unit pairs per exponent pair.
pub fn component_laws(ring: &ComponentRing, samples: usize, seed: u64) -> Result<bool> {
    let nt = ring.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    let t_nt = ring.pow(&ring.t(), nt as i64)?;
    ok &= t_nt == ring.from_unit(ring.base_unit().clone());
    let n = ring.degree() * (ring.components() as u64);
    let t_n = ring.pow(&ring.t(), n as i64)?;
    let u_back = ring.from_unit(ring.base_unit().pow(-(ring.components() as i64)));
    ok &= ring.mul(&t_n, &u_back)? == ring.identity();
    for j in 0..nt {
        for k in 0..nt {
            for _ in 0..samples.max(1) {
                let (v, w, z) = (
                    random_unit_model(ring, &mut rng)?,
                    random_unit_model(ring, &mut rng)?,
                    random_unit_model(ring, &mut rng)?,
                );
                let x = t_power_times(ring, j, &v)?;
                let y = t_power_times(ring, k, &w)?;
                let c = t_power_times(ring, rng.gen_range(0..nt), &z)?;
                let xy = ring.mul(&x, &y)?;
                ok &= xy == ring.mul(&y, &x)?;
                ok &= ring.mul(&xy, &c)? == ring.mul(&x, &ring.mul(&y, &c)?)?;
                ok &= ring.mul(&x, &ring.inv(&x)?)? == ring.identity();
                ok &= ring.mul(&ring.identity(), &x)? == x;
                ok &= ring.expand(&xy) == rational_sum(&ring.expand(&x), &ring.expand(&y));
                ok &= ring.decompose(&ring.expand(&xy))? == xy;
                let carry = (j + k) / nt;
                let expected = t_power_times(ring, (j + k) % nt, &v.mul(&w)?.mul(&ring.base_unit().pow(carry as i64))?)?;
                ok &= xy == expected;
            }
        }
    }
    // distinct (j, v) expand to distinct divisors
    let small: Vec<_> = (0..4).map(|_| random_unit_model(ring, &mut rng)).collect::<Result<_>>()?;
    let mut seen = Vec::new();
    for j in 0..nt {
        for v in &small {
            let e = ring.expand(&t_power_times(ring, j, v)?);
            let key = (j, v.clone());
            for (other, oe) in &seen {
                if e == *oe && *other != key {
                    ok = false;
                }
            }
            seen.push((key, e));
        }
    }
    Ok(ok)
}

/// `(p, f, d)` realising the grid `(q, d) ∈ {(2,1), (3,1), (4,1), (2,2), (3,2)}`.
pub const GRID: [(u32, u32, u32); 5] = [(2, 1, 1), (3, 1, 1), (2, 2, 1), (2, 1, 2), (3, 1, 2)];

pub fn grid() -> Vec<Params> {
    GRID.iter().map(|&(p, f, d)| Params::unramified(p, f, d).expect("grid parameters are valid")).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

fn label(params: Params) -> String {
    format!("(q={},d={})", params.q(), params.d)
}

pub fn criterion_cardinality() -> Result<Criterion> {
    let mut failures = Vec::new();
    for params in grid() {
        let levels: &[u32] = if params.d == 1 { &[1, 2, 3] } else { &[1, 2] };
        for &n in levels {
            let set = HyperplaneSet::new(params, n)?;
            if set.len() as u64 != expected_hyperplane_count(params, n) {
                failures.push(format!("{} n={n}", label(params)));
            }
        }
    }
    Ok(finish(1, "cardinality of H_n", failures))
}

pub fn criterion_compatibility() -> Result<Criterion> {
    let mut failures = Vec::new();
    for params in grid() {
        let top = if params.d == 1 { 2 } else { 1 };
        for n in 1..=top {
            let lower = HyperplaneSet::shared(params, n)?;
            let upper = HyperplaneSet::shared(params, n + 1)?;
            let g_up = canonical_generator(&upper);
            let ok_gen = g_up.pushforward(&lower)? == canonical_generator(&lower);
            let q = params.q();
            let ok_pow = g_up.pow_lifted(q - 1).pushforward(&lower)? == canonical_generator(&lower).pow_lifted(q - 1);
            if !(ok_gen && ok_pow) {
                failures.push(format!("{} n={n}", label(params)));
            }
        }
    }
    Ok(finish(2, "compatibility of canonical generators under pushforward", failures))
}

pub fn criterion_invariance(seed: u64) -> Result<Criterion> {
    let mut failures = Vec::new();
    for params in grid() {
        let set = HyperplaneSet::shared(params, 2)?;
        let class = kummer_class_sigma1(&set);
        let group = random_gl_family(params, 2, seed, 100)?;
        if !is_invariant(&class, &group)? {
            failures.push(format!("{} invariance", label(params)));
        }
        if !invariant_class_enumeration(params, 2)?.cyclic {
            failures.push(format!("{} uniqueness", label(params)));
        }
    }
    Ok(finish(3, "invariance and uniqueness of the Kummer class", failures))
}

pub fn criterion_components() -> Result<Criterion> {
    let mut failures = Vec::new();
    for params in grid() {
        if !pi0_report(params, 0)?.ok || !pi0_report(params, 1)?.ok {
            failures.push(label(params));
        }
    }
    Ok(finish(4, "connected components over C and K_breve", failures))
}

pub fn criterion_raynaud_product() -> Result<Criterion> {
    let mut failures = Vec::new();
    for params in grid() {
        let r = verify_global_section(&maximal(params)?)?;
        if !(r.ok && r.product_of_units_trivial) {
            failures.push(label(params));
        }
    }
    Ok(finish(5, "product of the u_i and the global section", failures))
}

pub fn criterion_key_congruence() -> Result<Criterion> {
    let mut failures = Vec::new();
    for params in grid().into_iter().filter(|p| p.q() != 4) {
        if !generic_fiber_congruence(params)?.ok {
            failures.push(label(params));
        }
    }
    Ok(finish(6, "generic-fiber congruence and x_i exponents", failures))
}

pub fn criterion_vertex_consistency() -> Result<Criterion> {
    let mut failures = Vec::new();
    for params in grid() {
        if !vertex_consistency(params)?.ok {
            failures.push(label(params));
        }
    }
    Ok(finish(7, "restriction to the vertex", failures))
}

fn symbols(pres: &SimplexPresentation) -> Vec<Symbol> {
    let d = pres.params().d as usize;
    let mut out: Vec<Symbol> = (0..d).map(Symbol::X).collect();
    for (block, reps) in pres.blocks().iter().enumerate() {
        out.extend((0..reps.len()).map(|rep| Symbol::P { block, rep }));
    }
    out
}

pub fn random_symbol_unit(pres: &SimplexPresentation, rng: &mut impl Rng) -> SymbolUnit {
    let d = pres.params().d as usize;
    let mut u = SymbolUnit::uniformizer_power(rng.gen_range(-2..=2));
    for s in symbols(pres).into_iter().chain([Symbol::X(d)]) {
        if rng.gen_bool(0.4) {
            u = u.mul(&SymbolUnit::symbol_power(s, rng.gen_range(-3..=3)));
        }
    }
    u.normalized(d)
}

/// Twists must be recognised with a witness reproducing them; a perturbation
/// of one coefficient by a non-`N`-th power must not.
pub fn equivalence_trials(params: Params, trials: usize, seed: u64) -> Result<(usize, usize)> {
    let pres = maximal(params)?;
    let base = ui_family(&pres)?;
    let d = params.d as usize;
    let n = params.galois_order() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let syms = symbols(&pres);
    let (mut twists_ok, mut perturbed_ok) = (0, 0);
    for _ in 0..trials {
        let w: Vec<SymbolUnit> = (0..=d).map(|_| random_symbol_unit(&pres, &mut rng)).collect();
        let twisted = base.twist(&w);
        if let Some(found) = solve_witness(&base, &twisted) {
            if base.twist(&found) == twisted {
                twists_ok += 1;
            }
        }
        let i = rng.gen_range(0..=d);
        let s = syms[rng.gen_range(0..syms.len())];
        let k = rng.gen_range(1..n);
        let mut units = twisted.units().to_vec();
        units[i] = units[i].mul(&SymbolUnit::symbol_power(s, k)).normalized(d);
        let perturbed = RaynaudDatum::new(params, units)?;
        if solve_witness(&base, &perturbed).is_none() {
            perturbed_ok += 1;
        }
    }
    Ok((twists_ok, perturbed_ok))
}

pub fn criterion_equivalence(seed: u64) -> Result<Criterion> {
    let mut failures = Vec::new();
    for params in grid() {
        let (t, p) = equivalence_trials(params, 200, seed)?;
        if t != 200 || p != 200 {
            failures.push(format!("{} twists {t}/200 perturbations {p}/200", label(params)));
        }
    }
    Ok(finish(8, "equivalence decision on twists and perturbations", failures))
}

/// Multiplicativity and unique minimum of `v_H`, `v_∞` on random elements.
pub fn valuation_trials(algebra: &CoverAlgebra, count: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms = algebra.forms().len();
    let mut ok = true;
    for _ in 0..count {
        let a = algebra.random_element(&mut rng);
        let b = algebra.random_element(&mut rng);
        let ab = algebra.mul(&a, &b);
        let k = rng.gen_range(0..forms);
        ok &= algebra.v_h(&ab, k)? == algebra.v_h(&a, k)? + algebra.v_h(&b, k)?;
        ok &= algebra.v_inf(&ab)? == algebra.v_inf(&a)? + algebra.v_inf(&b)?;
        ok &= algebra.v_h_minimizers(&a, k)?.len() == 1;
    }
    Ok(ok)
}

pub fn criterion_cover_ring(seed: u64) -> Result<Criterion> {
    let mut failures = Vec::new();
    for params in grid() {
        let algebra = CoverAlgebra::new(params)?;
        let n = algebra.degree();
        let mut expected = algebra.frac_poly(algebra.p_poly().clone());
        if n % 2 == 0 {
            expected = algebra.frac_neg(&expected);
        }
        if algebra.norm(&algebra.t()) != expected {
            failures.push(format!("{} norm(t)", label(params)));
        }
        if params.d == 1 && params.q() <= 3 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..20 {
                let x = algebra.random_element(&mut rng);
                if algebra.norm(&x) != algebra.norm_by_conjugates(&x) {
                    failures.push(format!("{} determinant norm", label(params)));
                    break;
                }
            }
        }
        if !valuation_trials(&algebra, 500, seed)? {
            failures.push(format!("{} valuations", label(params)));
        }
    }
    Ok(finish(9, "norms and valuations on the cover ring", failures))
}

pub fn criterion_idempotents(seed: u64) -> Result<Criterion> {
    let mut failures = Vec::new();
    for q in [2, 3, 4, 5] {
        if !idempotent_report(q).ok() {
            failures.push(format!("idempotents q={q}"));
        }
    }
    let ring = ComponentRing::new(Params::unramified(3, 1, 1)?, 0)?;
    if !component_laws(&ring, 3, seed)? {
        failures.push("component laws (q=3,d=1)".into());
    }
    Ok(finish(10, "idempotents and canonical forms", failures))
}

fn finish(id: usize, name: &'static str, failures: Vec<String>) -> Criterion {
    let ok = failures.is_empty();
    let detail = if ok { "all cases pass".into() } else { failures.join("; ") };
    Criterion { id, name, ok, detail }
}

pub fn acceptance(seed: u64) -> Result<Vec<Criterion>> {
    Ok(vec![
        criterion_cardinality()?,
        criterion_compatibility()?,
        criterion_invariance(seed)?,
        criterion_components()?,
        criterion_raynaud_product()?,
        criterion_key_congruence()?,
        criterion_vertex_consistency()?,
        criterion_equivalence(seed)?,
        criterion_cover_ring(seed)?,
        criterion_idempotents(seed)?,
    ])
}

pub fn acceptance_report(seed: u64) -> Result<Outcome> {
    let criteria = acceptance(seed)?;
    let ok = criteria.iter().all(|c| c.ok);
    let items: Vec<Value> = criteria
        .iter()
        .map(|c| json!({ "id": c.id.to_string(), "name": c.name, "ok": c.ok, "detail": c.detail }))
        .collect();
    Ok(Outcome::new(ok, json!({ "ok": ok, "criteria": items })))
}
