//! Sequence constructions driven by a predictor.
//!
//! [`adversarial_sequence`] builds a sequence whose redundancy stays bounded
//! under a nonvanishing predictor with computable enclosures, so no such
//! predictor is universal. [`trace_recursive_path`] follows the strings a
//! staged predictor certifies as likely.

use num_bigint::BigUint;

use crate::bits::BitStr;
use crate::error::{Error, Result};
use crate::predictor::{Enclosure, StagedPredictor};
use crate::ratio::{Dyadic, Ratio};

/// Precision rounds tried per digit before giving up.
pub const MAX_ROUNDS: u32 = 64;

/// `ln 2` rounded down and up to nine decimals.
const LN2_LO: u64 = 693_147_180;
const LN2_HI: u64 = 693_147_181;
const LN2_DEN: u64 = 1_000_000_000;

/// A dyadic `t_n` with `1/2 < t_n < 2^(2^-n − 1)`, with `2n+4` fractional
/// bits.
///
/// `2^(2^-n − 1) = e^v / 2` for `v = 2^-n·ln 2`, and `1 + v + v²/2 + v³/6`
/// is below `e^v`.
pub fn threshold(n: u32) -> Dyadic {
    let v = Ratio::new(LN2_LO, LN2_DEN).div_pow2(n as u64);
    let series = Ratio::one() + &v + v.pow(2).div_pow2(1) + v.pow(3) * Ratio::new(1, 6);
    series.div_pow2(1).floor_dyadic(2 * n as u64 + 4)
}

/// A dyadic lower bound on `2^(2 − 2^(1−n))` for `n ≥ 1`.
///
/// Writes the bound as `4·e^-a` with `a = 2^(1−n)·ln 2` and uses the
/// alternating series cut after an odd power, evaluated at an upper bound on
/// `a`. That partial sum is decreasing in `a`, so the result stays below.
pub fn redundancy_ceiling(n: u32) -> Dyadic {
    let a = Ratio::new(LN2_HI, LN2_DEN).mul_pow2(1).div_pow2(n as u64);
    let mut even = Ratio::zero();
    let mut odd = Ratio::zero();
    let mut term = Ratio::one();
    for k in 0..12u64 {
        if k > 0 {
            term = term * &a * Ratio::new(1, k);
        }
        if k % 2 == 0 {
            even += &term;
        } else {
            odd += &term;
        }
    }
    let lower = even.saturating_sub(&odd).mul_pow2(2);
    lower.floor_dyadic(2 * n as u64 + 40)
}

/// How the digit after `y(n)` was chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdversaryStep {
    pub n: usize,
    pub digit: u8,
    pub threshold: Dyadic,
    /// Enclosure width of the confirming round.
    pub width: Ratio,
    pub rounds: u32,
    pub parent: Enclosure,
    pub child: Enclosure,
    /// Whether the other child also qualified in the same round.
    pub tie: bool,
}

/// `2^n·Π_{i<n} t_i`, which bounds `2^n p(y(n)) / p(Λ)`, against the
/// ceiling `2^(2 − 2^(1−n))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCertificate {
    pub n: usize,
    pub product: Ratio,
    pub ceiling: Dyadic,
}

impl BoundCertificate {
    pub fn holds(&self) -> bool {
        self.product < self.ceiling.to_ratio()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdversaryTrace {
    pub sequence: BitStr,
    pub root: Enclosure,
    pub steps: Vec<AdversaryStep>,
}

impl AdversaryTrace {
    /// One certificate per recorded length `n ≥ 1`.
    pub fn certificates(&self) -> Vec<BoundCertificate> {
        let mut product = Ratio::one();
        let mut out = Vec::with_capacity(self.steps.len());
        for (i, step) in self.steps.iter().enumerate() {
            product = (product * step.threshold.to_ratio()).mul_pow2(1);
            let n = i + 1;
            out.push(BoundCertificate {
                n,
                product: product.clone(),
                ceiling: redundancy_ceiling(n as u32),
            });
        }
        out
    }

    /// Re-checks every recorded comparison and certificate. Consecutive
    /// enclosures of the same string must overlap.
    pub fn verify(&self) -> bool {
        let mut prev = &self.root;
        for step in &self.steps {
            let overlaps = step.parent.lo <= prev.hi && prev.lo <= step.parent.hi;
            let bound = &step.parent.lo * step.threshold.to_ratio();
            if !overlaps || step.child.lo > step.child.hi || step.child.hi >= bound {
                return false;
            }
            prev = &step.child;
        }
        self.certificates().iter().all(BoundCertificate::holds)
    }
}

/// Builds `y(n_target)` digit by digit, each time choosing a child `u` with
/// `p(y(n)u) < p(y(n))·t_n`, confirmed from enclosures. Digit 0 wins ties.
pub fn adversarial_sequence(p: &dyn StagedPredictor, n_target: usize) -> Result<AdversaryTrace> {
    if !p.caps().exact {
        return Err(Error::MissingCapability {
            op: "adversarial_sequence",
            capability: "exact",
        });
    }
    let mut y = BitStr::empty();
    let root = nonzero(p, &y, &Ratio::pow2_neg(4))?;
    let mut steps = Vec::with_capacity(n_target);
    for n in 0..n_target {
        let t = threshold(n as u32);
        let tr = t.to_ratio();
        let mut width = Ratio::pow2_neg(y.len() as u64 + 4);
        let mut found = None;
        for round in 1..=MAX_ROUNDS {
            let parent = nonzero(p, &y, &width)?;
            let kids = [
                nonzero(p, &y.child(0), &width)?,
                nonzero(p, &y.child(1), &width)?,
            ];
            let bound = &parent.lo * &tr;
            let ok = [kids[0].hi < bound, kids[1].hi < bound];
            if let Some(digit) = ok.iter().position(|&b| b) {
                let [k0, k1] = kids;
                let child = if digit == 0 { k0 } else { k1 };
                found = Some(AdversaryStep {
                    n,
                    digit: digit as u8,
                    threshold: t.clone(),
                    width: width.clone(),
                    rounds: round,
                    parent,
                    child,
                    tie: ok[0] && ok[1],
                });
                break;
            }
            width = width.div_pow2(1);
        }
        let step = found.ok_or(Error::BudgetExceeded {
            what: "adversarial_sequence separation",
            limit: MAX_ROUNDS as u64,
        })?;
        y.push(step.digit);
        steps.push(step);
    }
    Ok(AdversaryTrace {
        sequence: y,
        root,
        steps,
    })
}

fn nonzero(p: &dyn StagedPredictor, x: &BitStr, width: &Ratio) -> Result<Enclosure> {
    let e = p.enclose(x, width)?;
    if e.hi.is_zero() {
        return Err(Error::Vanishing(x.clone()));
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathHit {
    pub x: BitStr,
    pub stage: u64,
    pub lower_bound: Ratio,
}

/// Enumerates pairs `(x, approx(x, s))` for stages `s = 1, 2, ...` and, within
/// a stage, every `x` of length `n` extending `seed` in lexicographic order.
/// Returns the first pair with a lower bound above `2^-c`, or `None` once
/// `budget` pairs have been seen.
pub fn trace_recursive_path(
    p: &dyn StagedPredictor,
    seed: &BitStr,
    c: u32,
    n: usize,
    budget: u64,
) -> Option<PathHit> {
    if seed.len() > n {
        return None;
    }
    let level = Ratio::pow2_neg(c as u64);
    let free = n - seed.len();
    let per_stage = BigUint::from(1u32) << free;
    let mut used = 0u64;
    for stage in 1u64.. {
        let mut tail = BigUint::from(0u32);
        while tail < per_stage {
            if used >= budget {
                return None;
            }
            used += 1;
            let x = seed.concat(&BitStr::from_digits(
                (0..free).rev().map(|b| tail.bit(b as u64) as u8),
            ));
            let lower = p.approx(&x, stage);
            if lower > level {
                return Some(PathHit {
                    x,
                    stage,
                    lower_bound: lower,
                });
            }
            tail += 1u32;
        }
    }
    None
}
