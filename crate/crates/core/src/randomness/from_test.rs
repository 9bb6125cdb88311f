//! Conversions between predictors and sequential tests.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::test::{Enumerator, SequentialTest, TestSnapshot};
use super::weight::WeightFunction;
use crate::bits::BitStr;
use crate::error::Result;
use crate::predictor::{exact_value, require_distribution, Caps, Predictor, StagedPredictor};
use crate::ratio::Ratio;

/// The test rejecting `x` at level `m` when some prefix `y` of `x` has
/// `p′(y) > 2^m p(y)`.
///
/// Round `t = 1, 2, ...` visits every `y` with `|y| ≤ t` in shortlex order
/// and every `m` in `1..=t`, comparing `approx′(y, t)` with `2^m p(y)`; each
/// comparison is one enumeration step.
pub fn test_from_predictor(p: Predictor, p_prime: Predictor) -> Result<SequentialTest> {
    require_distribution(p.as_ref(), "test_from_predictor")?;
    let reference = p.clone();
    SequentialTest::new(reference, move || -> Enumerator {
        let p = p.clone();
        let q = p_prime.clone();
        Box::new((1u32..).flat_map(move |t| {
            let p = p.clone();
            let q = q.clone();
            BitStr::all_up_to(t as usize).flat_map(move |y| {
                let lhs = q.approx(&y, t as u64);
                let base = p.value(&y).unwrap_or_else(Ratio::zero);
                (1..=t).map(move |m| (lhs > base.mul_pow2(m as u64)).then(|| (y.clone(), m)))
            })
        }))
    })
}

/// Enumeration steps granted per stage by default.
pub const DEFAULT_STEPS_PER_STAGE: u64 = 4096;

/// `q(x,n) = Σ_{y ⊒ x, |y| = h} f(m_V(y)) p(y)` with horizon
/// `h = min(n, n_max)` and critical levels read after
/// `n · steps_per_stage` enumeration steps.
///
/// Below the horizon the mass of `x(h)` is split in proportion to `p`, and
/// `q(x,n) = 0` while `n < |x| ≤ n_max`. The result is stage-monotone and
/// additive at every stage `n > |x|`.
pub fn predictor_from_test(
    test: SequentialTest,
    p: Predictor,
    f: WeightFunction,
    n_max: usize,
) -> Result<Arc<TestPredictor>> {
    predictor_from_test_with_budget(test, p, f, n_max, DEFAULT_STEPS_PER_STAGE)
}

pub fn predictor_from_test_with_budget(
    test: SequentialTest,
    p: Predictor,
    f: WeightFunction,
    n_max: usize,
    steps_per_stage: u64,
) -> Result<Arc<TestPredictor>> {
    require_distribution(p.as_ref(), "predictor_from_test")?;
    Ok(Arc::new(TestPredictor {
        test,
        p,
        f,
        n_max,
        steps_per_stage,
        snapshots: Mutex::new(HashMap::new()),
    }))
}

pub struct TestPredictor {
    test: SequentialTest,
    p: Predictor,
    f: WeightFunction,
    n_max: usize,
    steps_per_stage: u64,
    snapshots: Mutex<HashMap<u64, Arc<TestSnapshot>>>,
}

impl fmt::Debug for TestPredictor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "predictor_from_test({:?}, n_max={})", self.f, self.n_max)
    }
}

impl TestPredictor {
    pub fn budget_for_stage(&self, stage: u64) -> u64 {
        stage.saturating_mul(self.steps_per_stage)
    }

    /// The part of the test seen by stage `n`.
    pub fn snapshot_at(&self, stage: u64) -> Arc<TestSnapshot> {
        let budget = self.budget_for_stage(stage);
        let mut cache = self.snapshots.lock().expect("snapshot cache poisoned");
        cache
            .entry(budget)
            .or_insert_with(|| Arc::new(self.test.snapshot(budget)))
            .clone()
    }

    fn weighted(&self, snap: &TestSnapshot, y: &BitStr) -> Result<Ratio> {
        Ok(self.f.eval(snap.level(y)) * exact_value(self.p.as_ref(), y)?)
    }

    fn eval(&self, x: &BitStr, stage: u64) -> Result<Ratio> {
        let h = (stage as usize).min(self.n_max);
        let snap = self.snapshot_at(stage);
        if x.len() > h {
            if (stage as usize) <= self.n_max {
                return Ok(Ratio::zero());
            }
            let anchor = x.prefix(h);
            return Ok(self.f.eval(snap.level(&anchor)) * exact_value(self.p.as_ref(), x)?);
        }
        let mut total = Ratio::zero();
        for tail in BitStr::all_of_len(h - x.len()) {
            total += self.weighted(&snap, &x.concat(&tail))?;
        }
        Ok(total)
    }
}

impl StagedPredictor for TestPredictor {
    fn approx(&self, x: &BitStr, stage: u64) -> Ratio {
        self.eval(x, stage)
            .expect("reference distribution was checked to be exact")
    }

    fn caps(&self) -> Caps {
        Caps {
            additive: true,
            ..Caps::NONE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predictor::{dirac, uniform, zero};

    fn b(s: &str) -> BitStr {
        s.parse().unwrap()
    }

    fn dirac_test() -> SequentialTest {
        test_from_predictor(uniform(), dirac(b("0")).unwrap()).unwrap()
    }

    #[test]
    fn early_rounds_have_the_documented_size() {
        let firsts: Vec<_> = dirac_test().enumerate().take(17).collect();
        assert_eq!(firsts.iter().flatten().count(), 1);
        assert_eq!(firsts[2 + 3 * 2 + 1], Some((b("00"), 1)));
    }

    #[test]
    fn dirac_against_uniform_levels() {
        let t = dirac_test();
        let snap = t.snapshot(20_000);
        for n in 1..=7 {
            assert_eq!(snap.level(&BitStr::repeat(0, n)), n as u32 - 1, "n={n}");
        }
        assert_eq!(snap.level(&b("0001011")), 2);
        assert_eq!(snap.level(&b("1000")), 0);
        assert_eq!(
            snap.level_mass(uniform().as_ref(), 4, 2).unwrap(),
            Ratio::new(1, 8)
        );
        assert!(snap
            .numerosity_violations(uniform().as_ref(), 6, 6)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn weighted_predictor_examples() {
        let q = predictor_from_test(dirac_test(), uniform(), WeightFunction::linear(), 6).unwrap();
        assert_eq!(q.approx(&b("."), 2), Ratio::new(1, 4));
        let z = predictor_from_test(dirac_test(), uniform(), WeightFunction::zero(), 6).unwrap();
        for x in BitStr::all_up_to(3) {
            assert_eq!(z.approx(&x, 4), Ratio::zero());
        }
        assert!(predictor_from_test(dirac_test(), zero(), WeightFunction::linear(), 6).is_err());
    }

    #[test]
    fn weighted_predictor_is_additive_and_monotone() {
        let q = predictor_from_test(dirac_test(), uniform(), WeightFunction::log_penalized(), 5)
            .unwrap();
        for n in 0..8u64 {
            assert!(q.approx(&b("."), n) <= Ratio::one());
            for x in BitStr::all_up_to(6) {
                let here = q.approx(&x, n);
                assert!(q.approx(&x, n + 1) >= here);
                let kids = q.approx(&x.child(0), n) + q.approx(&x.child(1), n);
                if n as usize > x.len() {
                    assert_eq!(kids, here, "x={x} n={n}");
                } else {
                    assert!(kids <= here);
                }
            }
        }
    }
}
