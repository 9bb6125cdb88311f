//! Seed-driven property tests for the invariants every construction keeps.

use predict_core::predictor::{
    martingale_to_predictor, normalize, predictor_to_martingale, subadditivize,
};
use predict_core::process::{
    distribution_to_endless_process, predictor_to_process, MonotoneProcess, ProcessTable,
};
use predict_core::randomness::test_from_predictor;
use predict_core::{BitStr, Ratio};
use predict_testkit as kit;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normalization_is_an_additive_upper_bound(seed in any::<u64>(), depth in 1usize..=4) {
        let mut rng = kit::rng(seed);
        let p = kit::subadditive_table(kit::subadditive_values(&mut rng, depth, 4));
        let q = normalize(p.clone()).unwrap();
        for x in BitStr::all_up_to(depth + 1) {
            let qx = q.value(&x).unwrap();
            prop_assert!(qx >= p.value(&x).unwrap());
            prop_assert_eq!(q.value(&x.child(0)).unwrap() + q.value(&x.child(1)).unwrap(), qx);
        }
    }

    #[test]
    fn subadditivization_is_staged_and_subadditive(seed in any::<u64>()) {
        let mut rng = kit::rng(seed);
        let h = subadditivize(kit::staged_grid_fn(&mut rng, 3, 4, 4));
        for n in 0..=4 {
            prop_assert!(h.approx(&BitStr::empty(), n) <= Ratio::one());
            for x in BitStr::all_up_to(3) {
                let here = h.approx(&x, n);
                prop_assert!(h.approx(&x, n + 1) >= here);
                prop_assert!(h.approx(&x.child(0), n) + h.approx(&x.child(1), n) <= here);
            }
        }
    }

    #[test]
    fn martingales_are_fair_and_invertible(seed in any::<u64>()) {
        let mut rng = kit::rng(seed);
        let p = kit::distribution_from(kit::rational_distribution_values(&mut rng, 4));
        let m = predictor_to_martingale(p.as_ref(), 4).unwrap();
        prop_assert!(m.check_fairness().is_ok());
        let back = martingale_to_predictor(&m).unwrap();
        for x in BitStr::all_up_to(5) {
            prop_assert_eq!(back.value(&x), p.value(&x));
        }
    }

    #[test]
    fn constructed_processes_are_monotone(seed in any::<u64>()) {
        let mut rng = kit::rng(seed);
        let h = subadditivize(kit::staged_grid_fn(&mut rng, 3, 3, 5));
        let f = predictor_to_process(h.as_ref(), 3, 3).unwrap();
        let reparsed = ProcessTable::parse(&f.table().to_text()).unwrap();
        prop_assert_eq!(&reparsed, f.table());
        for y in BitStr::all_up_to(2) {
            let pf = |z: &BitStr| f.table().solomonoff(z);
            prop_assert!(pf(&y.child(0)) + pf(&y.child(1)) <= pf(&y));
        }
    }

    #[test]
    fn endless_processes_reach_full_mass(seed in any::<u64>(), depth in 1usize..=4) {
        let mut rng = kit::rng(seed);
        let p = kit::distribution_from(kit::dyadic_distribution_values(&mut rng, depth, 4, false));
        let f: MonotoneProcess = distribution_to_endless_process(p.as_ref(), depth).unwrap();
        for n in 0..=depth {
            prop_assert!(f.table().level_mass(n).is_one());
        }
    }

    #[test]
    fn tests_from_predictors_respect_numerosity(seed in any::<u64>()) {
        let mut rng = kit::rng(seed);
        let p = kit::distribution_from(kit::dyadic_distribution_values(&mut rng, 3, 3, true));
        let q = kit::positive_mixture(&mut rng);
        let snap = test_from_predictor(p.clone(), q).unwrap().snapshot(3_000);
        prop_assert!(snap.numerosity_violations(p.as_ref(), 5, 5).unwrap().is_empty());
    }
}
