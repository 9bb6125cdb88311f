//! Raising a distribution on the strings a test rejects at growth-function
//! rate, while staying an exact distribution.
//!
//! `p′ = p1 + p2 + p3` with `p1(Λ) = 0`, `p2(Λ) = (g(1)+1)·2^{-g(1)}`,
//! `p3(Λ) = 1 − p2(Λ)`, and for each child `xu`
//!
//! - `p1(xu)`: the best `Σ g(|y|)·p(y)` over prefix-free `Y` below `xu` with
//!   `|y| ≤ k−1`, counting only `y` whose level is at least `g(|y|)`;
//! - `p2(xu) = (g(k)+1)·2^{-g(k)}`;
//! - `p3(xu) = p3(x)/2 − p2(xu) + [p1(x) + p2(x) − p1(x0) − p1(x1)]/2`;
//!
//! where `k` is the least integer `≥ |x|+2` with `(g(k)+1)·2^{-g(k)} < p3(x)/2`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::growth::GrowthFunction;
use super::test::TestSnapshot;
use crate::bits::BitStr;
use crate::error::{Error, Result};
use crate::predictor::{exact_value, require_distribution, Caps, Predictor, StagedPredictor};
use crate::ratio::Ratio;

/// Largest `k` the search will try.
pub const DEFAULT_K_CAP: u64 = 4096;

/// `(g(k)+1)·2^{-g(k)}`, the most a test can put on strings of length `≥ k`
/// at growth-function levels.
pub fn deep_level_bound(g: &GrowthFunction, k: u64) -> Ratio {
    let gk = g.eval(k);
    Ratio::from_integer(gk + 1).div_pow2(gk)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoostParts {
    pub p1: Ratio,
    pub p2: Ratio,
    pub p3: Ratio,
}

impl BoostParts {
    pub fn total(&self) -> Ratio {
        &(&self.p1 + &self.p2) + &self.p3
    }
}

#[derive(Debug)]
pub struct Boosted {
    p: Predictor,
    depth: usize,
    parts: BTreeMap<BitStr, BoostParts>,
    ks: BTreeMap<BitStr, u64>,
}

pub fn boost(
    p: Predictor,
    f: &TestSnapshot,
    g: &GrowthFunction,
    depth: usize,
) -> Result<Arc<Boosted>> {
    boost_with_cap(p, f, g, depth, DEFAULT_K_CAP)
}

pub fn boost_with_cap(
    p: Predictor,
    f: &TestSnapshot,
    g: &GrowthFunction,
    depth: usize,
    k_cap: u64,
) -> Result<Arc<Boosted>> {
    require_distribution(p.as_ref(), "boost")?;
    if g.eval(0) < 2 {
        return Err(Error::InvalidGrowth(format!(
            "boost needs g(n) >= 2, but g(0) = {}",
            g.eval(0)
        )));
    }
    let dp = Dp {
        p: p.as_ref(),
        f,
        g,
    };
    let mut parts = BTreeMap::new();
    let mut ks = BTreeMap::new();
    let p2 = deep_level_bound(g, 1);
    let root = BoostParts {
        p1: Ratio::zero(),
        p3: Ratio::one()
            .checked_sub(&p2)
            .ok_or(Error::InvalidGrowth("(g(1)+1)·2^-g(1) exceeds 1".into()))?,
        p2,
    };
    parts.insert(BitStr::empty(), root);

    for len in 0..depth {
        for x in BitStr::all_of_len(len) {
            let here = parts[&x].clone();
            let half = here.p3.div_pow2(1);
            let k = (len as u64 + 2..=k_cap)
                .find(|&k| deep_level_bound(g, k) < half)
                .ok_or(Error::BudgetExceeded {
                    what: "boost k-search",
                    limit: k_cap,
                })?;
            let p2 = deep_level_bound(g, k);
            let level = f.level(&x);
            let limit = k as usize - 1;
            let p1 = [
                dp.best(&x.child(0), limit, level)?,
                dp.best(&x.child(1), limit, level)?,
            ];
            let gain = (&here.p1 + &here.p2).div_pow2(1) + &half;
            let loss = &p2 + &(&p1[0] + &p1[1]).div_pow2(1);
            let p3 = gain
                .checked_sub(&loss)
                .ok_or_else(|| Error::NumerosityViolated { at: x.clone() })?;
            for (u, p1u) in p1.into_iter().enumerate() {
                parts.insert(
                    x.child(u as u8),
                    BoostParts {
                        p1: p1u,
                        p2: p2.clone(),
                        p3: p3.clone(),
                    },
                );
            }
            ks.insert(x, k);
        }
    }
    Ok(Arc::new(Boosted {
        p,
        depth,
        parts,
        ks,
    }))
}

struct Dp<'a> {
    p: &'a dyn StagedPredictor,
    f: &'a TestSnapshot,
    g: &'a GrowthFunction,
}

impl Dp<'_> {
    /// Best weighted antichain below `y` with depth at most `limit`, where
    /// `inherited` is the level enumerated on proper prefixes of `y`.
    fn best(&self, y: &BitStr, limit: usize, inherited: u32) -> Result<Ratio> {
        let level = inherited.max(self.f.entries().get(y).copied().unwrap_or(0));
        let py = exact_value(self.p, y)?;
        if !self.entries_strictly_below(y) {
            // Constant level: go as deep as g allows, the weight scales by g.
            let deepest = (y.len()..=limit)
                .rev()
                .find(|&d| self.g.eval(d as u64) <= level as u64);
            return Ok(match deepest {
                Some(d) => py * Ratio::from_integer(self.g.eval(d as u64)),
                None => Ratio::zero(),
            });
        }
        let gy = self.g.eval(y.len() as u64);
        let own = if level as u64 >= gy {
            py * Ratio::from_integer(gy)
        } else {
            Ratio::zero()
        };
        if y.len() >= limit {
            return Ok(own);
        }
        let split = self.best(&y.child(0), limit, level)? + self.best(&y.child(1), limit, level)?;
        Ok(own.max(split))
    }

    fn entries_strictly_below(&self, y: &BitStr) -> bool {
        self.f
            .entries()
            .range(y.clone()..)
            .find(|(k, _)| *k != y)
            .is_some_and(|(k, _)| y.is_prefix_of(k))
    }
}

/// The best `Σ g(|y|)·p(y)` over prefix-free `Y ⊆ x·X^{k−|x|}·X*` with
/// `|y| ≤ max_depth`, counting `y` whose level is at least `g(|y|)`. Every
/// node is visited, so this also serves as an oracle for the pruned search
/// inside [`boost`].
pub fn max_level_sum(
    p: &dyn StagedPredictor,
    f: &TestSnapshot,
    g: &GrowthFunction,
    x: &BitStr,
    k: usize,
    max_depth: usize,
) -> Result<Ratio> {
    fn rec(
        p: &dyn StagedPredictor,
        f: &TestSnapshot,
        g: &GrowthFunction,
        y: &BitStr,
        k: usize,
        max_depth: usize,
    ) -> Result<Ratio> {
        let own = if y.len() >= k {
            let gy = g.eval(y.len() as u64);
            if f.level(y) as u64 >= gy {
                exact_value(p, y)? * Ratio::from_integer(gy)
            } else {
                Ratio::zero()
            }
        } else {
            Ratio::zero()
        };
        if y.len() >= max_depth {
            return Ok(own);
        }
        let split =
            rec(p, f, g, &y.child(0), k, max_depth)? + rec(p, f, g, &y.child(1), k, max_depth)?;
        Ok(own.max(split))
    }
    rec(p, f, g, x, k, max_depth)
}

impl Boosted {
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `(p1, p2, p3)` at `x`, for `|x| ≤ depth`.
    pub fn parts(&self, x: &BitStr) -> Option<&BoostParts> {
        self.parts.get(x)
    }

    /// The `k` chosen for the children of `x`.
    pub fn k_for_children(&self, x: &BitStr) -> Option<u64> {
        self.ks.get(x).copied()
    }

    fn eval(&self, x: &BitStr) -> Ratio {
        if let Some(parts) = self.parts.get(x) {
            return parts.total();
        }
        let anchor = x.prefix(self.depth);
        let top = self.parts[&anchor].total();
        let pa = self.p.value(&anchor).expect("exact distribution");
        let px = self.p.value(x).expect("exact distribution");
        (top * px).div_or_zero(&pa)
    }
}

impl StagedPredictor for Boosted {
    fn approx(&self, x: &BitStr, _stage: u64) -> Ratio {
        self.eval(x)
    }

    fn caps(&self) -> Caps {
        Caps::DISTRIBUTION.with_dyadic(self.p.caps().dyadic_valued)
    }

    fn value(&self, x: &BitStr) -> Option<Ratio> {
        Some(self.eval(x))
    }
}
