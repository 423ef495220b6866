//! The ten acceptance criteria. Each prints one PASS/FAIL line; the process
//! exits non-zero if any fails.

use std::time::Instant;

use drinfeld_cover::base_rings::{CyclotomicField, Params};
use drinfeld_cover::building::{standard_simplex, SimplexPresentation, SimplexType};
use drinfeld_cover::cover::CoverAlgebra;
use drinfeld_cover::divisor::{
    canonical_generator, invariant_class_enumeration, is_invariant, kummer_class_sigma1, pi0, DivisorVector,
    ScalarField,
};
use drinfeld_cover::hyperplanes::{random_gl_family, HyperplaneSet};
use drinfeld_cover::idempotents::{idempotent_check, lagrange, Component, ComponentRing};
use drinfeld_cover::simplex_units::{
    restrict_to_vertex, solve_witness, ui_family, verify_global_section, verify_generic_fiber_congruence, vtilde_invariant,
    RaynaudDatum, Symbol, SymbolUnit,
};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240611;

fn grid() -> Vec<Params> {
    [(2, 1, 1), (3, 1, 1), (2, 2, 1), (2, 1, 2), (3, 1, 2)]
        .iter()
        .map(|&(p, f, d)| Params::unramified(p, f, d).unwrap())
        .collect()
}

fn label(params: Params) -> String {
    format!("(q={},d={})", params.q(), params.d)
}

fn maximal(params: Params) -> SimplexPresentation {
    standard_simplex(params, &SimplexType::maximal(params.d)).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    (0..e).fold(1 % m, |acc, _| acc * (b % m) % m)
}

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Points of projective space over a ring with residue field size `q`:
/// unimodular vectors divided by units.
fn cardinality() -> Check {
    for params in grid() {
        let (q, d) = (params.q(), params.d);
        let levels: &[u32] = if d == 1 { &[1, 2, 3] } else { &[1, 2] };
        for &n in levels {
            let unimodular = q.pow(n * (d + 1)) - q.pow((n - 1) * (d + 1));
            let units = q.pow(n) - q.pow(n - 1);
            let oracle = unimodular / units;
            let formula = params.component_degree() * q.pow((n - 1) * d);
            let got = HyperplaneSet::new(params, n).unwrap().len() as u64;
            ensure(oracle == formula && got == oracle, || {
                format!("{} n={n}: got {got}, expected {oracle}", label(params))
            })?;
        }
    }
    Ok(())
}

fn compatibility() -> Check {
    for params in grid() {
        let (q, d) = (params.q(), params.d as u64);
        let big_n = params.galois_order();
        let nt = params.component_degree();
        let top = if d == 1 { 2 } else { 1 };
        for n in 1..=top as u64 {
            // the integer identity behind compatibility
            ensure(pow_mod(q, n + d, big_n) == pow_mod(q, n - 1, big_n), || {
                format!("{} q^(n+d) != q^(n-1) mod N", label(params))
            })?;
            let lower = HyperplaneSet::shared(params, n as u32).unwrap();
            let upper = HyperplaneSet::shared(params, n as u32 + 1).unwrap();
            let pushed = canonical_generator(&upper).pushforward(&lower).unwrap();
            let expected = vec![pow_mod(q, n - 1, nt) as i64; lower.len()];
            ensure(pushed.reduced_coeffs() == expected && pushed.modulus() == nt, || {
                format!("{} n={n}: generator pushforward {:?}", label(params), pushed.reduced_coeffs())
            })?;
            let pushed = canonical_generator(&upper).pow_lifted(q - 1).pushforward(&lower).unwrap();
            let expected = vec![((q - 1) * pow_mod(q, n - 1, nt)) as i64 % big_n as i64; lower.len()];
            ensure(pushed.reduced_coeffs() == expected && pushed.modulus() == big_n, || {
                format!("{} n={n}: (q-1)-power pushforward {:?}", label(params), pushed.reduced_coeffs())
            })?;
        }
    }
    Ok(())
}

fn invariance_and_uniqueness() -> Check {
    for params in grid() {
        let set = HyperplaneSet::shared(params, 2).unwrap();
        let class = kummer_class_sigma1(&set);
        let group = random_gl_family(params, 2, SEED, 100).unwrap();
        ensure(group.len() == 100, || "family size".into())?;
        for g in &group {
            let mut perm = set.permutation(g).unwrap();
            perm.sort();
            ensure(perm == (0..set.len()).collect::<Vec<_>>(), || format!("{} action not bijective", label(params)))?;
        }
        ensure(is_invariant(&class, &group).unwrap(), || format!("{} class moved", label(params)))?;

        // exhaust (Z/N)^2 independently
        let (q, d) = (params.q(), params.d);
        let big_n = params.galois_order();
        let h1 = params.component_degree() % big_n;
        let h2 = params.component_degree() * q.pow(d) % big_n;
        let qd = q.pow(d) % big_n;
        let mut solutions = Vec::new();
        for a1 in 0..big_n {
            for a2 in 0..big_n {
                if a1 * h1 % big_n == 0 && a2 * h2 % big_n == 0 && a1 == qd * a2 % big_n {
                    solutions.push(vec![a1, a2]);
                }
            }
        }
        let mut multiples: Vec<Vec<u64>> =
            (0..big_n).map(|k| vec![k * (q - 1) % big_n, k * (q - 1) * q % big_n]).collect();
        multiples.sort();
        multiples.dedup();
        ensure(solutions == multiples, || format!("{} invariant group is not cyclic", label(params)))?;
        let e = invariant_class_enumeration(params, 2).unwrap();
        ensure(e.cyclic && e.solutions == solutions, || format!("{} enumeration differs", label(params)))?;
    }
    Ok(())
}

fn components() -> Check {
    for params in grid() {
        for n in [0, 1] {
            let set = HyperplaneSet::shared(params, n + 1).unwrap();
            let class = kummer_class_sigma1(&set);
            let big_n = params.galois_order();
            let over_c = class.divisor().reduced_coeffs().iter().fold(big_n, |g, &c| gcd(g, c as u64));
            let over_k = gcd(over_c, class.pi_exponent().rem_euclid(big_n as i64) as u64);
            ensure(over_c == params.q() - 1 && pi0(&class, ScalarField::C) == over_c, || {
                format!("{} n={n}: pi0 over C", label(params))
            })?;
            ensure(over_k == 1 && pi0(&class, ScalarField::KBreve) == 1, || {
                format!("{} n={n}: pi0 over K_breve", label(params))
            })?;
        }
    }
    Ok(())
}

fn raynaud_product() -> Check {
    for params in grid() {
        let pres = maximal(params);
        let d = params.d as usize;
        let u = ui_family(&pres).unwrap();
        let product = u.units().iter().fold(SymbolUnit::identity(), |acc, x| acc.mul(x)).normalized(d);
        ensure(product.is_identity(), || format!("{} product of u_i", label(params)))?;
        let r = verify_global_section(&pres).unwrap();
        ensure(r.ok && r.product == SymbolUnit::uniformizer_power(1), || {
            format!("{} global section", label(params))
        })?;
    }
    Ok(())
}

fn key_congruence() -> Check {
    for params in grid().into_iter().filter(|p| p.q() != 4) {
        let r = verify_generic_fiber_congruence(&maximal(params)).unwrap();
        let big_n = params.galois_order() as i64;
        let q = params.q() as i64;
        let expected: Vec<i64> = (0..params.d).map(|i| (q.pow(i + 1) - 1).rem_euclid(big_n)).collect();
        ensure(r.ok && r.bijective, || format!("{} congruence residues {:?}", label(params), r.residues))?;
        ensure(r.x_exponents == expected, || format!("{} x exponents {:?}", label(params), r.x_exponents))?;
    }
    Ok(())
}

fn vertex_consistency() -> Check {
    for params in grid() {
        let pres = maximal(params);
        let set = HyperplaneSet::shared(params, 1).unwrap();
        let big_n = params.galois_order();
        let s = SymbolUnit::uniformizer_power(1).mul(&vtilde_invariant(&ui_family(&pres).unwrap()));
        let (pi, divisor) = restrict_to_vertex(&pres, &set, &s).unwrap();
        let expected = DivisorVector::new(set.clone(), big_n, vec![params.q() as i64 - 1; set.len()]).unwrap();
        ensure(pi.rem_euclid(big_n as i64) == 1, || format!("{} pi exponent {pi}", label(params)))?;
        ensure(divisor.reduce_mod(big_n).unwrap() == expected, || {
            format!("{} restricted divisor {:?}", label(params), divisor.coeffs())
        })?;
    }
    Ok(())
}

fn random_unit(pres: &SimplexPresentation, rng: &mut ChaCha8Rng) -> SymbolUnit {
    let d = pres.params().d as usize;
    let mut u = SymbolUnit::uniformizer_power(rng.gen_range(-3..=3));
    for j in 0..=d {
        u = u.mul(&SymbolUnit::symbol_power(Symbol::X(j), rng.gen_range(-2..=2)));
    }
    for (block, reps) in pres.blocks().iter().enumerate() {
        for rep in 0..reps.len() {
            if rng.gen_bool(0.3) {
                u = u.mul(&SymbolUnit::symbol_power(Symbol::P { block, rep }, rng.gen_range(-2..=2)));
            }
        }
    }
    u.normalized(d)
}

fn equivalence() -> Check {
    for params in grid() {
        let pres = maximal(params);
        let d = params.d as usize;
        let q = params.q() as i64;
        let big_n = params.galois_order() as i64;
        let base = ui_family(&pres).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ params.q() ^ (params.d as u64) << 8);
        for trial in 0..200 {
            let w: Vec<SymbolUnit> = (0..=d).map(|_| random_unit(&pres, &mut rng)).collect();
            // v'_i = v_i w_i^q / w_{i+1}, written out here
            let units: Vec<SymbolUnit> = (0..=d)
                .map(|i| base.units()[i].mul(&w[i].pow(q)).div(&w[(i + 1) % (d + 1)]).normalized(d))
                .collect();
            let twisted = RaynaudDatum::new(params, units.clone()).unwrap();
            let witness = solve_witness(&base, &twisted)
                .ok_or_else(|| format!("{} twist {trial} declared inequivalent", label(params)))?;
            for i in 0..=d {
                let rebuilt = base.units()[i].mul(&witness[i].pow(q)).div(&witness[(i + 1) % (d + 1)]).normalized(d);
                ensure(rebuilt == units[i], || format!("{} twist {trial}: witness fails at {i}", label(params)))?;
            }

            // multiply one coefficient by x_j^k or P^k with N ∤ k
            let i = rng.gen_range(0..=d);
            let sym = if rng.gen_bool(0.5) {
                Symbol::X(rng.gen_range(0..d))
            } else {
                let block = rng.gen_range(0..=d);
                Symbol::P { block, rep: rng.gen_range(0..pres.representatives(block).len()) }
            };
            let k = rng.gen_range(1..big_n);
            let mut perturbed = units.clone();
            perturbed[i] = perturbed[i].mul(&SymbolUnit::symbol_power(sym, k)).normalized(d);
            let perturbed = RaynaudDatum::new(params, perturbed).unwrap();
            ensure(solve_witness(&base, &perturbed).is_none(), || {
                format!("{} perturbation {trial} declared equivalent", label(params))
            })?;
        }
    }
    Ok(())
}

fn cover_ring() -> Check {
    for params in grid() {
        let a = CoverAlgebra::new(params).unwrap();
        let n = a.degree();
        ensure(n as u64 == params.component_degree() && a.forms().len() == n - 1, || "form count".into())?;
        let p = a.frac_poly(a.p_poly().clone());
        let expected = if (n - 1) % 2 == 1 { a.frac_neg(&p) } else { p };
        ensure(a.norm(&a.t()) == expected, || format!("{} norm(t)", label(params)))?;

        let mut rng = ChaCha8Rng::seed_from_u64(SEED + n as u64);
        if params.d == 1 && params.q() <= 3 {
            for _ in 0..20 {
                let x = a.random_element(&mut rng);
                ensure(a.norm(&x) == a.norm_by_conjugates(&x), || format!("{} determinant norm", label(params)))?;
            }
        }
        for trial in 0..500 {
            let x = a.random_element(&mut rng);
            let y = a.random_element(&mut rng);
            let xy = a.mul(&x, &y);
            let k = rng.gen_range(0..a.forms().len());
            ensure(a.v_h(&xy, k).unwrap() == a.v_h(&x, k).unwrap() + a.v_h(&y, k).unwrap(), || {
                format!("{} v_H multiplicativity, trial {trial}", label(params))
            })?;
            ensure(a.v_inf(&xy).unwrap() == a.v_inf(&x).unwrap() + a.v_inf(&y).unwrap(), || {
                format!("{} v_inf multiplicativity, trial {trial}", label(params))
            })?;
            // the candidates i/Ñ + v_H(f_i) have distinct fractional parts
            let values: Vec<Rational64> = x
                .components()
                .iter()
                .enumerate()
                .filter(|(_, f)| !f.is_zero())
                .map(|(i, f)| Rational64::new(i as i64, n as i64) + a.frac_v_h(f, k).unwrap())
                .collect();
            let min = *values.iter().min().unwrap();
            ensure(values.iter().filter(|&&v| v == min).count() == 1 && a.v_h(&x, k).unwrap() == min, || {
                format!("{} unique minimum, trial {trial}", label(params))
            })?;
            ensure(a.v_h_minimizers(&x, k).unwrap().len() == 1, || "minimizers".into())?;
        }
    }
    Ok(())
}

fn idempotents_and_forms() -> Check {
    for q in [2u64, 3, 4, 5] {
        ensure(idempotent_check(q), || format!("idempotent_check q={q}"))?;
        // closed form (1/(q-1)) Σ_k a^{-k} X^k
        let k = CyclotomicField::new(q - 1);
        let scale = BigRational::new(BigInt::from(1), BigInt::from(q - 1));
        for a in 0..q - 1 {
            let expected: Vec<_> =
                (0..q - 1).map(|i| k.scale(&k.zeta_pow(-((a * i) as i64)), &scale)).collect();
            ensure(lagrange(q, a).coeffs == expected, || format!("L_a for q={q}, a=ζ^{a}"))?;
        }
    }

    let ring = ComponentRing::new(Params::unramified(3, 1, 1).unwrap(), 0).unwrap();
    let nt = ring.degree();
    let len = ring.set().len();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut random_v = || {
        let mut c: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
        let s: i64 = c.iter().sum();
        c[len - 1] -= s;
        ring.unit_model(rng.gen_range(-3..=3), c).unwrap()
    };
    let t_times = |j: u64, v| ring.mul(&ring.pow(&ring.t(), j as i64).unwrap(), &ring.from_unit(v)).unwrap();
    let mut u_coeffs = vec![1i64; len];
    u_coeffs[0] = 1 - len as i64;
    let u = ring.unit_model(0, u_coeffs).unwrap();
    ensure(*ring.base_unit() == u, || "base unit".into())?;

    for j in 0..nt {
        for k in 0..nt {
            let (v, w, z) = (random_v(), random_v(), random_v());
            let x = t_times(j, v.clone());
            let y = t_times(k, w.clone());
            let c = t_times((j + 2 * k) % nt, z);
            let xy = ring.mul(&x, &y).unwrap();
            let carry = (j + k) / nt;
            let vw = v.mul(&w).unwrap().mul(&u.pow(carry as i64)).unwrap();
            let expected = Component::Unit { j: (j + k) % nt, v: vw };
            ensure(xy.components.iter().all(|comp| *comp == expected), || format!("carry at ({j},{k})"))?;
            ensure(xy == ring.mul(&y, &x).unwrap(), || format!("commutativity at ({j},{k})"))?;
            ensure(
                ring.mul(&xy, &c).unwrap() == ring.mul(&x, &ring.mul(&y, &c).unwrap()).unwrap(),
                || format!("associativity at ({j},{k})"),
            )?;
            ensure(ring.mul(&x, &ring.inv(&x).unwrap()).unwrap() == ring.identity(), || {
                format!("inverse at ({j},{k})")
            })?;
            ensure(ring.mul(&ring.identity(), &x).unwrap() == x, || "identity".into())?;
            ensure(ring.decompose(&ring.expand(&xy)).unwrap() == xy, || format!("round trip at ({j},{k})"))?;
        }
    }
    // t^Ñ = u·t_0 with t_0 dropped, and t^N u^{-(q-1)} = 1
    ensure(ring.pow(&ring.t(), nt as i64).unwrap() == ring.from_unit(u.clone()), || "t^Ñ".into())?;
    let t_n = ring.pow(&ring.t(), 2 * nt as i64).unwrap();
    ensure(ring.mul(&t_n, &ring.from_unit(u.pow(-2))).unwrap() == ring.identity(), || "t^N u^-2".into())?;

    // injectivity of (j, v) ↦ t^j v on a small set
    let vs: Vec<_> = (0..5).map(|_| random_v()).collect();
    let mut seen = Vec::new();
    for j in 0..nt {
        for v in &vs {
            let e = ring.expand(&t_times(j, v.clone()));
            for (j2, v2, e2) in &seen {
                ensure(*e2 != e || (*j2 == j && v2 == v), || format!("collision at j={j}"))?;
            }
            seen.push((j, v.clone(), e));
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("cardinality of H_n", cardinality),
        ("canonical generators under pushforward", compatibility),
        ("invariance and uniqueness of the Kummer class", invariance_and_uniqueness),
        ("components over C and K_breve", components),
        ("product of the u_i and global section", raynaud_product),
        ("generic-fiber congruence", key_congruence),
        ("restriction to the vertex", vertex_consistency),
        ("equivalence of Raynaud data", equivalence),
        ("norms and valuations on the cover ring", cover_ring),
        ("idempotents and canonical forms", idempotents_and_forms),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
        if secs >= 60.0 {
            failed += 1;
            println!("criterion {:>2} FAIL  {name}: exceeded 60 s", i + 1);
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed.min(criteria.len()), criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
