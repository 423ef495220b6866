use std::sync::Arc;

use drinfeld_cover::base_rings::{Params, ResidueRing, ResidueRingElem, Ring};
use drinfeld_cover::building::{standard_simplex, SimplexType};
use drinfeld_cover::cover::CoverAlgebra;
use drinfeld_cover::divisor::{kummer_class_sigma1, pi0, DivisorVector, KummerClass, ScalarField};
use drinfeld_cover::hyperplanes::{canonicalize, random_gl, HyperplaneSet, UnimodularVector};
use drinfeld_cover::idempotents::ComponentRing;
use drinfeld_cover::simplex_units::{equivalent, equivalent_by_invariant, ui_family, Symbol, SymbolUnit};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rings() -> Vec<ResidueRing> {
    vec![
        ResidueRing::new(2, 1, 1, 3).unwrap(),
        ResidueRing::new(3, 1, 1, 2).unwrap(),
        ResidueRing::new(2, 2, 1, 2).unwrap(),
        ResidueRing::new(3, 2, 1, 1).unwrap(),
        ResidueRing::new(2, 1, 3, 3).unwrap(),
        ResidueRing::new(3, 1, 2, 2).unwrap(),
    ]
}

fn elem(ring: &ResidueRing, code: u32) -> ResidueRingElem {
    ResidueRingElem(code % ring.size())
}

fn params_strategy() -> impl Strategy<Value = Params> {
    prop::sample::select(vec![(2, 1, 1), (3, 1, 1), (2, 2, 1), (2, 1, 2), (3, 1, 2)])
        .prop_map(|(p, f, d)| Params::unramified(p, f, d).unwrap())
}

fn divisor(set: &Arc<HyperplaneSet>, modulus: u64, raw: &[i64]) -> DivisorVector {
    let mut coeffs: Vec<i64> = (0..set.len()).map(|i| raw[i % raw.len()]).collect();
    let total: i64 = coeffs.iter().sum();
    coeffs[0] -= total;
    DivisorVector::new(set.clone(), modulus, coeffs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residue_ring_axioms(r in 0usize..6, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let ring = &rings()[r];
        let (a, b, c) = (elem(ring, a), elem(ring, b), elem(ring, c));
        prop_assert_eq!(ring.add(a, b), ring.add(b, a));
        prop_assert_eq!(ring.mul(a, b), ring.mul(b, a));
        prop_assert_eq!(ring.mul(a, ring.mul(b, c)), ring.mul(ring.mul(a, b), c));
        prop_assert_eq!(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)));
        prop_assert_eq!(ring.add(a, ring.neg(a)), ring.zero());
        prop_assert_eq!(ring.mul(a, ring.one()), a);
        if let Some(inv) = ring.inv(a) {
            prop_assert!(ring.is_unit(a));
            prop_assert_eq!(ring.mul(a, inv), ring.one());
        } else {
            prop_assert!(!ring.is_unit(a));
        }
        if !ring.is_zero(a) && !ring.is_zero(b) && !ring.is_zero(ring.mul(a, b)) {
            prop_assert_eq!(ring.valuation(ring.mul(a, b)), ring.valuation(a) + ring.valuation(b));
        }
    }

    #[test]
    fn teichmuller_lifts_are_multiplicative(r in 0usize..6, a in any::<u32>(), b in any::<u32>()) {
        let ring = &rings()[r];
        let field = ring.residue_field();
        let a = drinfeld_cover::base_rings::FieldElem(a % field.order());
        let b = drinfeld_cover::base_rings::FieldElem(b % field.order());
        let lift = |x| ring.teichmuller_lift(x);
        prop_assert_eq!(ring.mul(lift(a), lift(b)), lift(field.mul(a, b)));
        prop_assert_eq!(ring.residue(lift(a)), a);
    }

    #[test]
    fn canonicalize_ignores_unit_scaling(raw in prop::collection::vec(any::<u32>(), 3), s in any::<u32>()) {
        let ring = ResidueRing::new(3, 1, 1, 2).unwrap();
        let mut entries: Vec<ResidueRingElem> = raw.iter().map(|&x| elem(&ring, x)).collect();
        if !entries.iter().any(|&x| ring.is_unit(x)) {
            entries[0] = ring.one();
        }
        let scale = elem(&ring, s);
        prop_assume!(ring.is_unit(scale));
        let v = UnimodularVector::new(&ring, entries.clone()).unwrap();
        let scaled = UnimodularVector::new(&ring, entries.iter().map(|&x| ring.mul(scale, x)).collect()).unwrap();
        let h = canonicalize(&ring, &v);
        prop_assert_eq!(&h, &canonicalize(&ring, &scaled));
        let again = UnimodularVector::new(&ring, h.entries().to_vec()).unwrap();
        prop_assert_eq!(&h, &canonicalize(&ring, &again));
    }

    #[test]
    fn pushforward_is_additive_and_equivariant(
        params in params_strategy(),
        a in prop::collection::vec(-5i64..5, 1..8),
        b in prop::collection::vec(-5i64..5, 1..8),
        seed in any::<u64>(),
    ) {
        let lower = HyperplaneSet::shared(params, 1).unwrap();
        let upper = HyperplaneSet::shared(params, 2).unwrap();
        let m = params.galois_order();
        let (x, y) = (divisor(&upper, m, &a), divisor(&upper, m, &b));
        let sum = x.add(&y).unwrap().pushforward(&lower).unwrap();
        prop_assert_eq!(sum, x.pushforward(&lower).unwrap().add(&y.pushforward(&lower).unwrap()).unwrap());
        let g = random_gl(params, 2, seed).unwrap();
        let g_low = g.reduce_to(upper.ring(), lower.ring()).unwrap();
        let left = x.act(&g).unwrap().pushforward(&lower).unwrap();
        let right = x.pushforward(&lower).unwrap().act(&g_low).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn fibers_partition_the_next_level(params in params_strategy()) {
        let lower = HyperplaneSet::new(params, 1).unwrap();
        let upper = HyperplaneSet::new(params, 2).unwrap();
        let fibers = lower.fibers(&upper).unwrap();
        let mut all: Vec<usize> = fibers.iter().flatten().copied().collect();
        prop_assert!(fibers.iter().all(|f| f.len() as u64 == params.q().pow(params.d)));
        all.sort();
        prop_assert_eq!(all, (0..upper.len()).collect::<Vec<_>>());
    }

    #[test]
    fn pi0_ignores_nth_powers(params in params_strategy(), raw in prop::collection::vec(-9i64..9, 1..6), k in -3i64..3) {
        let set = HyperplaneSet::shared(params, 2).unwrap();
        let class = kummer_class_sigma1(&set);
        let m = params.galois_order();
        let other = KummerClass::new(k * m as i64, divisor(&set, m, &raw).scale(m as i64)).unwrap();
        let product = class.mul(&other).unwrap();
        prop_assert_eq!(pi0(&product, ScalarField::C), pi0(&class, ScalarField::C));
        prop_assert_eq!(pi0(&product, ScalarField::KBreve), pi0(&class, ScalarField::KBreve));
    }

    #[test]
    fn twisted_data_are_equivalent(params in params_strategy(), exps in prop::collection::vec(-4i64..4, 12), pis in prop::collection::vec(-3i64..3, 3)) {
        let pres = standard_simplex(params, &SimplexType::maximal(params.d)).unwrap();
        let d = params.d as usize;
        let base = ui_family(&pres).unwrap();
        let w: Vec<SymbolUnit> = (0..=d)
            .map(|i| {
                SymbolUnit::uniformizer_power(pis[i])
                    .mul(&SymbolUnit::symbol_power(Symbol::X(i % d), exps[i]))
                    .mul(&SymbolUnit::symbol_power(Symbol::P { block: i, rep: 0 }, exps[i + 4]))
                    .normalized(d)
            })
            .collect();
        let twisted = base.twist(&w);
        prop_assert!(equivalent(&base, &twisted));
        prop_assert!(equivalent(&twisted, &base));
        prop_assert!(equivalent_by_invariant(&base, &twisted));
    }

    #[test]
    fn cover_valuations_are_multiplicative(seed in any::<u64>(), params in prop::sample::select(vec![(2u32, 1u32), (3, 1)])) {
        let algebra = CoverAlgebra::new(Params::unramified(params.0, 1, params.1).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = algebra.random_element(&mut rng);
        let y = algebra.random_element(&mut rng);
        let xy = algebra.mul(&x, &y);
        for k in 0..algebra.forms().len() {
            prop_assert_eq!(algebra.v_h(&xy, k).unwrap(), algebra.v_h(&x, k).unwrap() + algebra.v_h(&y, k).unwrap());
        }
        prop_assert_eq!(algebra.frac_v_h(&algebra.norm(&x), 0).unwrap() as i64,
            (algebra.v_h(&x, 0).unwrap() * algebra.degree() as i64).to_integer());
    }

    #[test]
    fn component_functions_form_a_group(j in 0u64..4, k in 0u64..4, l in 0u64..4, raw in prop::collection::vec(-4i64..4, 12)) {
        let ring = ComponentRing::new(Params::unramified(3, 1, 1).unwrap(), 0).unwrap();
        let unit = |off: usize| {
            let mut c = raw[off..off + 4].to_vec();
            let s: i64 = c.iter().sum();
            c[3] -= s;
            ring.unit_model(raw[off], c).unwrap()
        };
        let make = |j: u64, off: usize| {
            ring.mul(&ring.pow(&ring.t(), j as i64).unwrap(), &ring.from_unit(unit(off))).unwrap()
        };
        let (x, y, z) = (make(j, 0), make(k, 4), make(l, 8));
        let xy = ring.mul(&x, &y).unwrap();
        prop_assert_eq!(ring.mul(&xy, &z).unwrap(), ring.mul(&x, &ring.mul(&y, &z).unwrap()).unwrap());
        prop_assert_eq!(&xy, &ring.mul(&y, &x).unwrap());
        prop_assert_eq!(ring.mul(&x, &ring.inv(&x).unwrap()).unwrap(), ring.identity());
        prop_assert_eq!(ring.decompose(&ring.expand(&xy)).unwrap(), xy);
    }
}
