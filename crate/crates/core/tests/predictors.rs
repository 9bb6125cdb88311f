use std::sync::Arc;

use predict_core::predictor::{
    bernoulli, dirac, from_fn, martingale_to_predictor, mixture, normalize,
    predictor_to_martingale, redundancy, squeeze_eval, subadditivize, uniform, zero, Predictor,
    StagedFn,
};
use predict_core::{BitStr, Caps, Ratio, StagedPredictor};
use predict_testkit as kit;
use rand::Rng;

fn assert_staged_predictor(name: &str, p: &dyn StagedPredictor, depth: usize, stages: u64) {
    for n in 0..=stages {
        assert!(
            p.approx(&BitStr::empty(), n) <= Ratio::one(),
            "{name}: root above 1"
        );
        for x in BitStr::all_up_to(depth) {
            let here = p.approx(&x, n);
            assert!(
                p.approx(&x, n + 1) >= here,
                "{name}: decreases at {x}, stage {n}"
            );
            let kids = p.approx(&x.child(0), n) + p.approx(&x.child(1), n);
            assert!(kids <= here, "{name}: not subadditive at {x}, stage {n}");
        }
    }
}

#[test]
fn constructed_predictors_are_monotone_and_subadditive() {
    let mut rng = kit::rng(11);
    let mut all: Vec<(String, Predictor)> = vec![
        ("uniform".into(), uniform()),
        ("zero".into(), zero()),
        ("bernoulli".into(), bernoulli(Ratio::new(3, 4)).unwrap()),
        ("dirac".into(), dirac("011".parse().unwrap()).unwrap()),
    ];
    for i in 0..6 {
        let table = kit::subadditive_table(kit::subadditive_values(&mut rng, 4, 3));
        all.push((format!("normalize#{i}"), normalize(table.clone()).unwrap()));
        all.push((format!("table#{i}"), table));
        all.push((format!("mixture#{i}"), kit::positive_mixture(&mut rng)));
        let g = kit::staged_grid_fn(&mut rng, 5, 6, 4);
        all.push((format!("subadditivize#{i}"), subadditivize(g)));
    }
    for (name, p) in &all {
        assert_staged_predictor(name, p.as_ref(), 6, 8);
    }
}

#[test]
fn normalization_dominates_and_is_a_distribution() {
    let mut rng = kit::rng(12);
    for _ in 0..40 {
        let depth = rng.gen_range(1..=5);
        let values = kit::subadditive_values(&mut rng, depth, 3);
        let p = kit::subadditive_table(values);
        let q = normalize(p.clone()).unwrap();
        assert!(q.caps().is_distribution());
        assert_eq!(q.value(&BitStr::empty()), Some(Ratio::one()));
        for x in BitStr::all_up_to(6) {
            let qx = q.value(&x).unwrap();
            assert!(qx >= p.value(&x).unwrap(), "x={x}");
            let kids = q.value(&x.child(0)).unwrap() + q.value(&x.child(1)).unwrap();
            assert_eq!(kids, qx);
        }
    }
}

#[test]
fn subadditivization_recovers_closed_forms() {
    let mut rng = kit::rng(13);
    for _ in 0..20 {
        let p = bernoulli(Ratio::new(rng.gen_range(1..8), 8)).unwrap();
        let delays: Vec<u64> = (0..32).map(|_| rng.gen_range(0..3)).collect();
        let closed = p.clone();
        let g: StagedFn = Arc::new(move |x: &BitStr, n: u64| {
            let v = closed.value(x).unwrap();
            let ready = x.len() as u64 + delays[x.len() + x.count_ones()];
            if n >= ready {
                v
            } else {
                v.floor_dyadic(n).to_ratio()
            }
        });
        let h = subadditivize(g);
        for x in BitStr::all_up_to(4) {
            for n in 0..8 {
                assert!(h.approx(&x, n) <= p.value(&x).unwrap());
            }
            assert_eq!(h.approx(&x, 8), p.value(&x).unwrap(), "x={x}");
        }
    }
}

#[test]
fn mixture_weights_bound_the_gap() {
    let mut rng = kit::rng(14);
    for _ in 0..20 {
        let family: Vec<(Ratio, Predictor)> = vec![
            (Ratio::new(1, 2), uniform()),
            (
                Ratio::new(1, 4),
                bernoulli(Ratio::new(rng.gen_range(1..8), 8)).unwrap(),
            ),
            (
                Ratio::new(1, 8),
                kit::distribution_from(kit::rational_distribution_values(&mut rng, 4)),
            ),
        ];
        let mix = mixture(family.clone()).unwrap();
        for x in BitStr::all_up_to(6) {
            let rmix = redundancy(mix.as_ref(), &x, 0);
            for (w, p) in &family {
                let ri = redundancy(p.as_ref(), &x, 0);
                assert!(w * &ri.ratio <= rmix.ratio);
            }
        }
    }
}

#[test]
fn martingale_round_trip() {
    let mut rng = kit::rng(15);
    for _ in 0..20 {
        let p = kit::distribution_from(kit::rational_distribution_values(&mut rng, 6));
        let m = predictor_to_martingale(p.as_ref(), 6).unwrap();
        m.check_fairness().unwrap();
        let back = martingale_to_predictor(&m).unwrap();
        for x in BitStr::all_up_to(6) {
            assert_eq!(back.value(&x), p.value(&x), "x={x}");
        }
    }
}

#[test]
fn squeezing_encloses_closed_forms() {
    for r in [Ratio::new(1, 2), Ratio::new(1, 3), Ratio::new(5, 7)] {
        let closed = bernoulli(r).unwrap();
        let inner = closed.clone();
        let staged = from_fn(Caps::DISTRIBUTION, move |x, n| {
            inner.value(x).unwrap().floor_dyadic(n).to_ratio()
        });
        let eps = Ratio::pow2_neg(12);
        for x in BitStr::all_up_to(4) {
            let e = squeeze_eval(staged.as_ref(), &x, &eps).unwrap();
            assert!(e.contains(&closed.value(&x).unwrap()), "x={x}");
            assert!(e.width() <= eps);
        }
    }
}
