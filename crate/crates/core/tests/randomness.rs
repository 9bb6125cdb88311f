use predict_core::predictor::{bernoulli, dirac, exact_value, uniform, Predictor};
use predict_core::randomness::{
    boost, calibration_report, deep_level_bound, growth_profile, max_level_sum,
    predictor_from_test, test_from_predictor, GrowthFunction, SequentialTest, TestSnapshot,
    Verdict, WeightFunction,
};
use predict_core::{BitStr, Ratio, StagedPredictor};
use predict_testkit as kit;
use rand::Rng;

fn b(s: &str) -> BitStr {
    s.parse().unwrap()
}

fn positive_distribution<R: Rng>(rng: &mut R) -> Predictor {
    match rng.gen_range(0..3) {
        0 => uniform(),
        1 => kit::distribution_from(kit::dyadic_distribution_values(rng, 4, 4, true)),
        _ => kit::distribution_from(kit::rational_distribution_values(rng, 4)),
    }
}

fn random_test<R: Rng>(rng: &mut R) -> (Predictor, SequentialTest) {
    let p = positive_distribution(rng);
    let q = match rng.gen_range(0..3) {
        0 => kit::positive_mixture(rng),
        1 => dirac(kit::bitstr(rng, 1..=4)).unwrap(),
        _ => bernoulli(Ratio::new(rng.gen_range(1..8), 8)).unwrap(),
    };
    let t = test_from_predictor(p.clone(), q).unwrap();
    (p, t)
}

#[test]
fn tests_from_predictors_are_numerous_enough() {
    let mut rng = kit::rng(41);
    for i in 0..12 {
        let (p, t) = random_test(&mut rng);
        let snap = t.snapshot(20_000);
        let bad = snap.numerosity_violations(p.as_ref(), 6, 6).unwrap();
        assert!(bad.is_empty(), "test #{i}: {bad:?}");
    }
}

#[test]
fn predictor_from_test_identities() {
    let mut rng = kit::rng(42);
    let weights = [WeightFunction::linear(), WeightFunction::log_penalized()];
    for i in 0..6 {
        let (p, t) = random_test(&mut rng);
        let f = weights[i % 2].clone();
        let q = predictor_from_test(t, p.clone(), f.clone(), 6).unwrap();
        for n in 0..=7u64 {
            assert!(q.approx(&BitStr::empty(), n) <= Ratio::one());
            for x in BitStr::all_up_to(5) {
                let here = q.approx(&x, n);
                let kids = q.approx(&x.child(0), n) + q.approx(&x.child(1), n);
                if n as usize > x.len() {
                    assert_eq!(kids, here, "#{i} x={x} n={n}");
                }
                assert!(q.approx(&x, n + 1) >= here);
            }
        }
        let z = kit::bitstr(&mut rng, 6..=6);
        for n in 1..=6 {
            let zn = z.prefix(n);
            let level = q.snapshot_at(n as u64).level(&zn);
            let floor = f.eval(level) * exact_value(p.as_ref(), &zn).unwrap();
            assert!(q.approx(&zn, n as u64) >= floor, "#{i} z={zn}");
        }
    }
}

fn toy_tests() -> Vec<(Predictor, TestSnapshot)> {
    let mut rng = kit::rng(43);
    let mut out = vec![
        (
            uniform(),
            TestSnapshot::from_pairs([(b("00"), 2), (b("11"), 1)]),
        ),
        (
            uniform(),
            TestSnapshot::from_pairs([(b("0000"), 4), (b("01"), 1), (b("1011"), 3)]),
        ),
        (
            uniform(),
            test_from_predictor(uniform(), dirac(b("0")).unwrap())
                .unwrap()
                .snapshot(5_000),
        ),
        (
            uniform(),
            test_from_predictor(uniform(), bernoulli(Ratio::new(3, 4)).unwrap())
                .unwrap()
                .snapshot(5_000),
        ),
    ];
    for _ in 0..3 {
        let p = kit::distribution_from(kit::dyadic_distribution_values(&mut rng, 4, 4, true));
        let q = kit::positive_mixture(&mut rng);
        let snap = test_from_predictor(p.clone(), q).unwrap().snapshot(5_000);
        out.push((p, snap));
    }
    for (p, f) in &out {
        assert!(f
            .numerosity_violations(p.as_ref(), 6, 6)
            .unwrap()
            .is_empty());
    }
    out
}

#[test]
fn boost_is_a_dominating_distribution() {
    let growths = [
        GrowthFunction::table(vec![2; 6]).unwrap(),
        GrowthFunction::linear(Ratio::new(1, 2))
            .unwrap()
            .with_offset(2),
    ];
    for (i, (p, f)) in toy_tests().into_iter().enumerate() {
        for g in &growths {
            let q = boost(p.clone(), &f, g, 5).unwrap();
            assert_eq!(q.value(&BitStr::empty()), Some(Ratio::one()));
            for x in BitStr::all_up_to(5) {
                let qx = q.value(&x).unwrap();
                let kids = q.value(&x.child(0)).unwrap() + q.value(&x.child(1)).unwrap();
                assert_eq!(kids, qx, "toy #{i} g={g} x={x}");
                let gx = g.eval(x.len() as u64);
                if f.level(&x) as u64 >= gx {
                    let px = exact_value(p.as_ref(), &x).unwrap();
                    assert!(qx >= Ratio::from_integer(gx) * px, "toy #{i} g={g} x={x}");
                }
            }
        }
    }
}

#[test]
fn antichain_sums_respect_the_growth_bound() {
    let growths = [
        GrowthFunction::table(vec![2; 6]).unwrap(),
        GrowthFunction::linear(Ratio::new(1, 2))
            .unwrap()
            .with_offset(2),
    ];
    for (i, (p, f)) in toy_tests().into_iter().enumerate() {
        for g in &growths {
            for k in 0..=5 {
                let sum = max_level_sum(p.as_ref(), &f, g, &BitStr::empty(), k, 5).unwrap();
                assert!(sum <= deep_level_bound(g, k as u64), "toy #{i} g={g} k={k}");
            }
            let q = boost(p.clone(), &f, g, 4).unwrap();
            for x in BitStr::all_up_to(3) {
                let k = q.k_for_children(&x).unwrap() as usize;
                if k > 10 {
                    continue;
                }
                for u in 0..2 {
                    let xu = x.child(u);
                    let full = max_level_sum(p.as_ref(), &f, g, &xu, 0, k - 1).unwrap();
                    assert_eq!(q.parts(&xu).unwrap().p1, full, "toy #{i} g={g} x={xu}");
                }
            }
        }
    }
}

#[test]
fn calibration_on_periodic_and_biased_streams() {
    let p = bernoulli(Ratio::new(2, 3)).unwrap();
    let z: BitStr = "110".repeat(40).parse().unwrap();
    let rep = calibration_report(
        p.as_ref(),
        &z,
        &Ratio::new(3, 5),
        &Ratio::new(7, 10),
        &Ratio::zero(),
    )
    .unwrap();
    assert_eq!(rep.ratio, Some(Ratio::new(2, 3)));

    let mut rng = kit::rng(44);
    let mut z = BitStr::empty();
    for _ in 0..100_000 {
        z.push(u8::from(rng.gen_bool(0.7)));
    }
    let p = bernoulli(Ratio::new(7, 10)).unwrap();
    let w = Ratio::new(7, 10);
    let rep = calibration_report(p.as_ref(), &z, &w, &w, &Ratio::new(2, 100)).unwrap();
    assert_eq!(rep.predictions, 100_000);
    let share = rep.confirmed as f64 / rep.predictions as f64;
    assert!((0.68..=0.72).contains(&share), "share={share}");
    assert_eq!(rep.verdict, Verdict::Within);
}

#[test]
fn growth_profile_of_a_biased_coin_on_ones() {
    let p = bernoulli(Ratio::new(3, 4)).unwrap();
    let z = BitStr::repeat(1, 20);
    let g = GrowthFunction::linear(Ratio::one()).unwrap();
    let rows = growth_profile(p.as_ref(), &z, &g, 0);
    let mut expect = Ratio::one();
    for row in &rows {
        expect = expect * Ratio::new(3, 2);
        assert_eq!(row.ratio, expect);
        assert!((row.over_growth().unwrap() - 1.5f64.log2()).abs() < 1e-12);
    }
}
