mod common;

use proptest::prelude::*;

use qchar::engine::{run_fm_with, ProcessingOrder, RunOptions};
use qchar::monomial::{a_monomial, SL2Monomial};
use qchar::sl2::{factor_q_strings, sl2_expansion};
use qchar::{
    make_algebra, run_fm, AlgebraSpec, Family, FmOutcome, Limits, WeightVector, YMonomial,
};

use common::{a1_oracle, Poly};

fn algebra() -> impl Strategy<Value = AlgebraSpec> {
    prop_oneof![
        (1usize..=4).prop_map(|n| make_algebra(Family::A, n).unwrap()),
        (2usize..=4).prop_map(|n| make_algebra(Family::B, n).unwrap()),
        (2usize..=4).prop_map(|n| make_algebra(Family::C, n).unwrap()),
        (4usize..=5).prop_map(|n| make_algebra(Family::D, n).unwrap()),
        (6usize..=8).prop_map(|n| make_algebra(Family::E, n).unwrap()),
        Just(make_algebra(Family::F, 4).unwrap()),
        Just(make_algebra(Family::G, 2).unwrap()),
    ]
}

fn monomial(max_node: usize) -> impl Strategy<Value = YMonomial> {
    prop::collection::vec(((1..=max_node, -10i64..=10), -3i64..=3), 0..6)
        .prop_map(|f| YMonomial::from_factors(f).unwrap())
}

fn dominant(max_node: usize, max_factors: usize) -> impl Strategy<Value = YMonomial> {
    prop::collection::vec((1..=max_node, -4i64..=4), 1..=max_factors)
        .prop_map(|f| YMonomial::from_factors(f.into_iter().map(|v| (v, 1))).unwrap())
}

proptest! {
    #[test]
    fn text_round_trip(m in monomial(6)) {
        let text = m.to_string();
        let back: YMonomial = text.parse().unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn weight_is_a_homomorphism(m in monomial(4), n in monomial(4)) {
        let w = |x: &YMonomial| x.weight(4);
        prop_assert_eq!(w(&(&m * &n)), &w(&m) + &w(&n));
        prop_assert_eq!(w(&m.inv()), -w(&m));
    }

    #[test]
    fn a_monomial_has_root_weight(spec in algebra(), k in -6i64..=6, pick in 0usize..8) {
        let i = pick % spec.rank() + 1;
        let a = a_monomial(&spec, i, k).unwrap();
        prop_assert_eq!(a.weight(spec.rank()), spec.simple_root(i).unwrap());
    }

    #[test]
    fn natural_order_is_a_partial_order(
        spec in algebra(),
        base in prop::collection::vec(-3i64..=3, 8),
        steps in prop::collection::vec((0usize..8, 0i64..=2), 0..6),
    ) {
        let n = spec.rank();
        let lambda = WeightVector(base[..n].to_vec());
        let mut mu = lambda.clone();
        for (pick, times) in &steps {
            for _ in 0..*times {
                mu = &mu + &spec.simple_root(pick % n + 1).unwrap();
            }
        }
        prop_assert!(spec.leq_natural(&lambda, &lambda));
        prop_assert!(spec.leq_natural(&lambda, &mu));
        if lambda != mu {
            prop_assert!(!spec.leq_natural(&mu, &lambda));
        }
        let nu = &mu + &spec.simple_root(1).unwrap();
        prop_assert!(spec.leq_natural(&lambda, &nu));
    }

    #[test]
    fn a1_engine_matches_closed_form(spectral in prop::collection::vec(-8i64..=8, 1..=6)) {
        let spec = make_algebra(Family::A, 1).unwrap();
        let m = YMonomial::from_factors(spectral.iter().map(|&k| ((1, k), 1))).unwrap();
        let out = run_fm(&spec, &m, Limits::default()).unwrap();
        let chi = out.character().unwrap();
        prop_assert_eq!(chi.terms(), &a1_oracle(&spectral));
    }

    #[test]
    fn sl2_expansion_matches_closed_form(spectral in prop::collection::vec(-8i64..=8, 0..=6)) {
        let m = SL2Monomial::from_factors(spectral.iter().map(|&k| (k, 1)));
        let mut from_module = Poly::new();
        let top = YMonomial::from_factors(spectral.iter().map(|&k| ((1, k), 1))).unwrap();
        for term in sl2_expansion(&m, 1).unwrap() {
            let mut n = top.clone();
            for k in term.positions {
                n = &n * &YMonomial::from_factors([((1, k - 1), -1), ((1, k + 1), -1)]).unwrap();
            }
            *from_module.entry(n).or_insert(0) += term.coefficient;
        }
        prop_assert_eq!(from_module, a1_oracle(&spectral));
    }

    #[test]
    fn q_strings_pairwise_general_position(
        spectral in prop::collection::vec(-8i64..=8, 0..=8),
        step in 1i64..=3,
    ) {
        let m = SL2Monomial::from_factors(spectral.iter().map(|&k| (k, 1)));
        let strings = factor_q_strings(&m, step).unwrap();
        let total: usize = strings.iter().map(|s| s.length).sum();
        prop_assert_eq!(total, spectral.len());
        for (i, a) in strings.iter().enumerate() {
            for b in &strings[i + 1..] {
                prop_assert!(a.general_position(b));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Within-weight processing order never changes the outcome, whether
    /// the run completes or fails.
    #[test]
    fn processing_order_is_irrelevant(
        which in 0usize..3,
        m in dominant(2, 3),
        seed in any::<u64>(),
        node_major in any::<bool>(),
    ) {
        let spec = [
            make_algebra(Family::A, 2).unwrap(),
            make_algebra(Family::C, 2).unwrap(),
            make_algebra(Family::G, 2).unwrap(),
        ][which].clone();
        let limits = Limits { max_terms: 4000, ..Limits::default() };
        let base = run_fm(&spec, &m, limits);
        let other = run_fm_with(&spec, &m, &RunOptions {
            limits,
            order: ProcessingOrder { node_major, shuffle_seed: Some(seed) },
        });
        match (base, other) {
            (Ok(FmOutcome::Completed { character: a, colored: ca, .. }),
             Ok(FmOutcome::Completed { character: b, colored: cb, .. })) => {
                prop_assert_eq!(a, b);
                prop_assert_eq!(ca, cb);
            }
            (Ok(FmOutcome::Failed(a)), Ok(FmOutcome::Failed(b))) => {
                prop_assert_eq!(a.weight, b.weight);
                prop_assert_eq!(a.offenders, b.offenders);
                prop_assert_eq!(a.partial, b.partial);
            }
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "outcomes differ: {:?} vs {:?}", a.is_ok(), b.is_ok()),
        }
    }

    /// On success every coloring is saturated and every monomial lies in
    /// the A-lattice below the highest monomial.
    #[test]
    fn completed_runs_are_saturated_and_in_lattice(which in 0usize..3, m in dominant(2, 3)) {
        let spec = [
            make_algebra(Family::A, 2).unwrap(),
            make_algebra(Family::B, 2).unwrap(),
            make_algebra(Family::G, 2).unwrap(),
        ][which].clone();
        let limits = Limits { max_terms: 4000, ..Limits::default() };
        if let Ok(FmOutcome::Completed { character, colored, .. }) = run_fm(&spec, &m, limits) {
            prop_assert!(colored.iter().all(|(_, t)| t.is_saturated()));
            prop_assert!(colored.check_invariants());
            for n in character.terms().keys() {
                prop_assert!(common::in_a_lattice_below(&spec, &m, n), "{}", n);
            }
            prop_assert_eq!(character.coefficient(&m), 1);
        }
    }
}
