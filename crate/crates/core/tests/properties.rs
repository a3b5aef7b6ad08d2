use num_bigint::BigInt;
use proptest::prelude::*;

use mutinv_core::algebra::{
    poly_exact_div, rat, ratfunc_equal, ratfunc_substitute, Monomial, Polynomial, RationalFunction,
};
use mutinv_core::cluster::{
    m_action, matrix_mutate, mutate_seed, walk, ExchangeData, ExchangeMatrix, Seed,
};
use mutinv_core::diophantine::{dio_step, DioEquation};
use mutinv_core::dvector::{dvectors_closed_form, dvectors_recurrence};
use mutinv_core::expr::{parse_ratfunc, print_canonical};
use mutinv_core::invariants::{
    combine_over_clusters, decompose_a1a1, finite_clusters, recompose_a1a1, verify_invariant, SymmetricCombiner,
};

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0u32..4, 0u32..4, -5i64..=5), 0..6)
        .prop_map(|terms| Polynomial::from_terms(terms.into_iter().map(|(a, b, c)| (Monomial::new(a, b), rat(c)))))
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (poly(), nonzero_poly()).prop_map(|(a, b)| RationalFunction::new(a, b).unwrap())
}

/// Small Laurent polynomials, cheap to push through every finite cluster.
fn small_laurent() -> impl Strategy<Value = RationalFunction> {
    (prop::collection::vec((0u32..3, 0u32..3, -3i64..=3), 1..4), 0u32..2, 0u32..2).prop_map(|(terms, a, b)| {
        let num = Polynomial::from_terms(terms.into_iter().map(|(a, b, c)| (Monomial::new(a, b), rat(c))));
        RationalFunction::new(num, Polynomial::pure(a, b)).unwrap()
    })
}

/// Exchange exponents are both zero or both positive.
fn exchange() -> impl Strategy<Value = (u32, u32)> {
    prop_oneof![Just((0, 0)), (1u32..4, 1u32..4)]
}

fn word(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(1u8..=2, 0..=max)
}

fn finite_type() -> impl Strategy<Value = (u32, u32)> {
    prop::sample::select(vec![(0, 0), (1, 1), (1, 2), (2, 1), (1, 3), (3, 1)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_undoes_product(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!(poly_exact_div(&(&a * &b), &b).unwrap(), a);
    }

    #[test]
    fn equality_ignores_common_factors(f in ratfunc(), g in nonzero_poly()) {
        let scaled = RationalFunction::new(f.num() * &g, f.den() * &g).unwrap();
        prop_assert!(ratfunc_equal(&f, &scaled));
        prop_assert!(ratfunc_equal(&scaled, &f));
    }

    #[test]
    fn field_operations(f in ratfunc(), g in ratfunc()) {
        let sum = &f + &g;
        prop_assert!(ratfunc_equal(&(&sum - &g), &f));
        if !g.is_zero() {
            prop_assert!(ratfunc_equal(&(&f * &g).div(&g).unwrap(), &f));
        }
    }

    #[test]
    fn printing_round_trips(f in ratfunc()) {
        let text = print_canonical(&f);
        let back = parse_ratfunc(&text).unwrap();
        prop_assert!(ratfunc_equal(&back, &f));
        prop_assert_eq!(print_canonical(&back), text);
    }

    #[test]
    fn identity_substitution(f in ratfunc()) {
        let same = ratfunc_substitute(&f, &RationalFunction::x1(), &RationalFunction::x2()).unwrap();
        prop_assert!(ratfunc_equal(&same, &f));
    }

    #[test]
    fn evaluation_is_multiplicative(f in ratfunc(), g in ratfunc(), x in 1i64..7, y in 1i64..7) {
        let (x, y) = (rat(x), rat(y));
        if let (Ok(a), Ok(b)) = (f.eval(&x, &y), g.eval(&x, &y)) {
            prop_assert_eq!((&f * &g).eval(&x, &y).unwrap(), a * b);
        }
    }

    #[test]
    fn mutation_is_an_involution((m, n) in exchange(), w in word(6), d in 1u8..=2) {
        let ex = ExchangeData::new(m, n).unwrap();
        let seed = walk(ex, &w).unwrap().pop().unwrap();
        let back = mutate_seed(&mutate_seed(&seed, d).unwrap(), d).unwrap();
        prop_assert!(back.same_labeled(&seed));
        prop_assert_eq!(back.position, seed.position);
    }

    #[test]
    fn variables_are_integral_laurent((m, n) in exchange(), w in word(7)) {
        let ex = ExchangeData::new(m, n).unwrap();
        let table = dvectors_recurrence(m, n, 8).unwrap();
        for s in walk(ex, &w).unwrap() {
            prop_assert!(s.var1.is_integral() && s.var2.is_integral());
            let d = &table[&s.position];
            for (v, dv) in [(&s.var1, &d[0]), (&s.var2, &d[1])] {
                let (a, b) = v.denominator_exponents();
                prop_assert_eq!((BigInt::from(a), BigInt::from(b)), (dv.d1.clone(), dv.d2.clone()));
            }
        }
    }

    #[test]
    fn closed_form_matches_recurrence(m in 1u32..8, n in 1u32..8, k in 1u64..40) {
        prop_assume!(m * n >= 4);
        let table = dvectors_recurrence(m, n, 2 * k as i64 + 1).unwrap();
        let c = dvectors_closed_form(m, n, k).unwrap();
        prop_assert_eq!(&c.even, &table[&(2 * k as i64)]);
        prop_assert_eq!(&c.odd, &table[&(2 * k as i64 + 1)]);
    }

    #[test]
    fn a1a1_decomposition_round_trips(g in nonzero_poly()) {
        prop_assume!(!g.is_constant());
        let t = recompose_a1a1(&g).unwrap();
        prop_assert!(verify_invariant(&t, 0, 0).unwrap());
        prop_assert_eq!(decompose_a1a1(&t).unwrap(), g);
    }

    #[test]
    fn mactions_are_involutions((m, n) in finite_type(), i in 0usize..10, d in 1u8..=2) {
        let clusters = finite_clusters(m, n).unwrap();
        let pair = clusters[i % clusters.len()].clone();
        let back = m_action(&m_action(&pair, d, m, n).unwrap(), d, m, n).unwrap();
        prop_assert!(ratfunc_equal(&back.0, &pair.0) && ratfunc_equal(&back.1, &pair.1));
    }

    #[test]
    fn matrix_mutation_is_an_involution(upper in prop::collection::vec(-3i64..=3, 6), k in 1usize..=4) {
        let size = 4;
        let mut b = vec![vec![0i64; size]; size];
        let mut it = upper.into_iter();
        for i in 0..size {
            for j in i + 1..size {
                let x = it.next().unwrap();
                b[i][j] = x;
                b[j][i] = -x;
            }
        }
        let b = ExchangeMatrix::new(b).unwrap();
        let once = matrix_mutate(&b, k).unwrap();
        prop_assert!(once.is_skew_symmetrizable());
        prop_assert_eq!(matrix_mutate(&once, k).unwrap(), b);
    }

    #[test]
    fn steps_stay_on_the_level_set(name in prop::sample::select(vec!["a2", "b2", "g2", "affine22", "affine14"]), w in word(8)) {
        let eq = DioEquation::preset(name).unwrap();
        let mut pair = eq.initial.clone();
        for d in w {
            pair = dio_step(&pair, d, eq.m, eq.n).unwrap();
            prop_assert!(eq.is_solution(&pair), "{name}: {pair:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn construction_ignores_cluster_order((m, n) in finite_type(), f in small_laurent(), seed in any::<u64>()) {
        let clusters = finite_clusters(m, n).unwrap();
        let mut shuffled = clusters.clone();
        let len = shuffled.len();
        for i in 0..len {
            shuffled.swap(i, (seed.rotate_left(i as u32 * 7) as usize) % len);
        }
        let phi = SymmetricCombiner::mean_over(2);
        let (Ok(a), Ok(b)) = (
            combine_over_clusters(&clusters, &f, &phi),
            combine_over_clusters(&shuffled, &f, &phi),
        ) else {
            return Ok(());
        };
        prop_assert!(ratfunc_equal(&a, &b));
        if !a.is_constant() {
            prop_assert!(verify_invariant(&a, m, n).unwrap());
        }
    }
}

#[test]
fn maction_permutes_finite_clusters() {
    for (m, n) in [(0, 0), (1, 1), (1, 2), (1, 3)] {
        let clusters = finite_clusters(m, n).unwrap();
        for d in [1, 2] {
            let images: Vec<_> = clusters.iter().map(|c| m_action(c, d, m, n).unwrap()).collect();
            for img in &images {
                let hits = clusters.iter().filter(|c| ratfunc_equal(&c.0, &img.0) && ratfunc_equal(&c.1, &img.1)).count();
                assert_eq!(hits, 1, "({m}, {n}) direction {d}");
            }
        }
    }
}

#[test]
fn initial_seed_is_fixed_by_empty_walk() {
    let ex = ExchangeData::new(2, 3).unwrap();
    assert_eq!(walk(ex, &[]).unwrap(), vec![Seed::initial(ex)]);
}
