use predict_core::conditional::{conditional_bounds, extremal_distributions};
use predict_core::predictor::subadditivize;
use predict_core::{BitStr, StagedPredictor};
use predict_testkit::{self as kit, oracle};
use rand::Rng;

#[test]
fn bounds_match_brute_force_over_the_comb() {
    let mut rng = kit::rng(21);
    let mut checked = 0;
    while checked < 40 {
        let values = kit::subadditive_values(&mut rng, 3, 3);
        let p = kit::subadditive_table(values);
        let vw = kit::bitstr(&mut rng, 1..=3);
        let split = rng.gen_range(0..vw.len());
        let (v, w) = (
            vw.prefix(split),
            BitStr::from_digits(vw.digits()[split..].iter().copied()),
        );
        let Some((lo, hi)) = oracle::comb_extremes(|x| p.value(x).unwrap(), &v, &w, 3) else {
            continue;
        };
        let b = conditional_bounds(p.as_ref(), &v, &w, 0).unwrap();
        if b.upper.is_zero() && b.lower.is_zero() {
            // Denominator vanished; the oracle saw only q(v) = 0.
            continue;
        }
        assert_eq!((b.lower.clone(), b.upper.clone()), (lo, hi), "v={v} w={w}");
        let (low, high) = extremal_distributions(p.clone(), &v, &w).unwrap();
        let cond =
            |q: &dyn StagedPredictor| q.value(&vw).unwrap().div_or_zero(&q.value(&v).unwrap());
        assert_eq!(cond(low.as_ref()), b.lower);
        assert_eq!(cond(high.as_ref()), b.upper);
        for x in BitStr::all_up_to(5) {
            for q in [&low, &high] {
                let qx = q.value(&x).unwrap();
                assert!(qx >= p.value(&x).unwrap());
                assert_eq!(
                    q.value(&x.child(0)).unwrap() + q.value(&x.child(1)).unwrap(),
                    qx
                );
            }
        }
        checked += 1;
    }
}

#[test]
fn staged_bounds_tighten() {
    let mut rng = kit::rng(22);
    for _ in 0..30 {
        let p = subadditivize(kit::staged_grid_fn(&mut rng, 3, 8, 3));
        let v = kit::bitstr(&mut rng, 0..=2);
        let w = kit::bitstr(&mut rng, 1..=2);
        let mut prev = conditional_bounds(p.as_ref(), &v, &w, 1).unwrap();
        for n in 2..=8 {
            let b = conditional_bounds(p.as_ref(), &v, &w, n).unwrap();
            assert!(b.lower <= b.upper || b.upper.is_zero());
            assert!(b.lower >= prev.lower, "v={v} w={w} n={n}");
            assert!(
                b.upper <= prev.upper || prev.upper.is_zero(),
                "v={v} w={w} n={n}"
            );
            prev = b;
        }
    }
}
