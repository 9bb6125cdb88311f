//! Predictor-to-predictor constructions.

use std::fmt;
use std::sync::Arc;

use super::{exact_value, Caps, Enclosure, Predictor, StagedPredictor};
use crate::bits::BitStr;
use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// A staged map `(x, n) → g(x, n)`, nondecreasing in `n`.
pub type StagedFn = Arc<dyn Fn(&BitStr, u64) -> Ratio + Send + Sync>;

/// Largest stage [`squeeze_eval`] will request before giving up.
pub const DEFAULT_SQUEEZE_CAP: u64 = 1 << 20;

/// Encloses `p(x)` for an additive predictor with `p(Λ) = 1`.
///
/// Along the path to `x` the lower bound at `yu` is `approx(yu, n)` and the
/// upper bound is the parent's upper bound minus `approx(yū, n)`. The stage
/// doubles until the interval is narrower than `eps`.
pub fn squeeze_eval(p: &dyn StagedPredictor, x: &BitStr, eps: &Ratio) -> Result<Enclosure> {
    squeeze_with_cap(p, x, eps, DEFAULT_SQUEEZE_CAP)
}

pub(crate) fn squeeze_with_cap(
    p: &dyn StagedPredictor,
    x: &BitStr,
    eps: &Ratio,
    cap: u64,
) -> Result<Enclosure> {
    let caps = p.caps();
    for (ok, capability) in [(caps.additive, "additive"), (caps.unit_root, "unit-root")] {
        if !ok {
            return Err(Error::MissingCapability {
                op: "squeeze_eval",
                capability,
            });
        }
    }
    let mut stage = 1u64;
    loop {
        let mut hi = Ratio::one();
        let mut lo = Ratio::one();
        for i in 0..x.len() {
            let y = x.prefix(i);
            let u = x.digit(i);
            lo = p.approx(&y.child(u), stage);
            hi = hi.saturating_sub(&p.approx(&y.child(1 - u), stage));
        }
        let enc = Enclosure { lo, hi };
        if enc.width() <= *eps {
            return Ok(enc);
        }
        if stage >= cap {
            return Err(Error::BudgetExceeded {
                what: "squeeze_eval",
                limit: cap,
            });
        }
        stage = (stage * 2).min(cap);
    }
}

/// Equips an additive unit-root predictor with enclosures computed by
/// [`squeeze_eval`], so it carries the `exact` flag.
pub fn squeezed(p: Predictor) -> Result<Predictor> {
    let caps = p.caps();
    if !caps.additive || !caps.unit_root {
        return Err(Error::MissingCapability {
            op: "squeezed",
            capability: if caps.additive {
                "unit-root"
            } else {
                "additive"
            },
        });
    }
    Ok(Arc::new(Squeezed { inner: p }))
}

#[derive(Debug)]
struct Squeezed {
    inner: Predictor,
}

impl StagedPredictor for Squeezed {
    fn approx(&self, x: &BitStr, stage: u64) -> Ratio {
        self.inner.approx(x, stage)
    }

    fn caps(&self) -> Caps {
        Caps {
            exact: true,
            ..self.inner.caps()
        }
    }

    fn value(&self, x: &BitStr) -> Option<Ratio> {
        self.inner.value(x)
    }

    fn enclose(&self, x: &BitStr, width: &Ratio) -> Result<Enclosure> {
        match self.inner.value(x) {
            Some(v) => Ok(Enclosure::point(v)),
            None => squeeze_eval(self.inner.as_ref(), x, width),
        }
    }
}

/// The distribution `p′` with `p′(Λ) = 1`, `p′(x1) = p(x1)` and
/// `p′(x0) = p′(x) − p(x1)`. It dominates `p`.
pub fn normalize(p: Predictor) -> Result<Predictor> {
    if !p.caps().exact || p.value(&BitStr::empty()).is_none() {
        return Err(Error::MissingCapability {
            op: "normalize",
            capability: "exact",
        });
    }
    Ok(Arc::new(Normalized { inner: p }))
}

#[derive(Debug)]
struct Normalized {
    inner: Predictor,
}

impl Normalized {
    fn eval(&self, x: &BitStr) -> Result<Ratio> {
        let mut cur = Ratio::one();
        for i in 0..x.len() {
            let one = exact_value(self.inner.as_ref(), &x.prefix(i).child(1))?;
            cur = if x.digit(i) == 1 {
                one
            } else {
                cur.checked_sub(&one).ok_or_else(|| Error::NotSubadditive {
                    at: x.prefix(i),
                    parent: Box::new(cur.clone()),
                    left: Box::new(Ratio::zero()),
                    right: Box::new(one.clone()),
                })?
            };
        }
        Ok(cur)
    }
}

impl StagedPredictor for Normalized {
    fn approx(&self, x: &BitStr, _stage: u64) -> Ratio {
        self.eval(x)
            .unwrap_or_else(|e| panic!("normalize: inner predictor broke its contract: {e}"))
    }

    fn caps(&self) -> Caps {
        Caps::DISTRIBUTION.with_dyadic(self.inner.caps().dyadic_valued)
    }

    fn value(&self, x: &BitStr) -> Option<Ratio> {
        self.eval(x).ok()
    }
}

/// Forces stage-wise subadditivity on a staged map.
///
/// `h(x,0) = 0`; for `n ≥ 1`, `h(Λ,n) = min(g(Λ,n), 1)`,
/// `h(x0,n) = min(g(x0,n), h(x,n) − h(x1,n−1))` and
/// `h(x1,n) = min(g(x1,n), h(x,n) − h(x0,n))`.
pub fn subadditivize(g: StagedFn) -> Predictor {
    Arc::new(Subadditive { g })
}

struct Subadditive {
    g: StagedFn,
}

impl fmt::Debug for Subadditive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("subadditivize(..)")
    }
}

impl Subadditive {
    /// `h(y(i), s)` for every prefix `y(i)` of `x` and every `s ≤ n`.
    fn path_table(&self, x: &BitStr, n: u64) -> Vec<Ratio> {
        let root = BitStr::empty();
        let mut parent: Vec<Ratio> = (0..=n)
            .map(|s| {
                if s == 0 {
                    Ratio::zero()
                } else {
                    (self.g)(&root, s).min(Ratio::one())
                }
            })
            .collect();
        for i in 0..x.len() {
            let y = x.prefix(i);
            let (c0, c1) = (y.child(0), y.child(1));
            let mut h0 = vec![Ratio::zero(); parent.len()];
            let mut h1 = vec![Ratio::zero(); parent.len()];
            for s in 1..parent.len() {
                let room0 = parent[s].saturating_sub(&h1[s - 1]);
                h0[s] = (self.g)(&c0, s as u64).min(room0);
                let room1 = parent[s].saturating_sub(&h0[s]);
                h1[s] = (self.g)(&c1, s as u64).min(room1);
            }
            parent = if x.digit(i) == 0 { h0 } else { h1 };
        }
        parent
    }
}

impl StagedPredictor for Subadditive {
    fn approx(&self, x: &BitStr, stage: u64) -> Ratio {
        self.path_table(x, stage)
            .pop()
            .expect("stage table is nonempty")
    }

    fn caps(&self) -> Caps {
        Caps::NONE
    }
}

/// `Σ wᵢ·pᵢ` for weights summing to at most 1.
pub fn mixture(family: Vec<(Ratio, Predictor)>) -> Result<Predictor> {
    let sum: Ratio = family.iter().map(|(w, _)| w).sum();
    if sum > Ratio::one() {
        return Err(Error::WeightSumExceeded { sum });
    }
    let all = |f: fn(&Caps) -> bool| family.iter().all(|(_, p)| f(&p.caps()));
    let caps = Caps {
        additive: all(|c| c.additive),
        unit_root: sum.is_one() && all(|c| c.unit_root),
        exact: all(|c| c.exact),
        dyadic_valued: all(|c| c.dyadic_valued) && family.iter().all(|(w, _)| w.is_dyadic()),
    };
    Ok(Arc::new(Mixture { family, caps }))
}

#[derive(Debug)]
struct Mixture {
    family: Vec<(Ratio, Predictor)>,
    caps: Caps,
}

impl StagedPredictor for Mixture {
    fn approx(&self, x: &BitStr, stage: u64) -> Ratio {
        self.family
            .iter()
            .map(|(w, p)| w * &p.approx(x, stage))
            .sum()
    }

    fn caps(&self) -> Caps {
        self.caps
    }

    fn value(&self, x: &BitStr) -> Option<Ratio> {
        let mut total = Ratio::zero();
        for (w, p) in &self.family {
            total += w * &p.value(x)?;
        }
        Some(total)
    }

    fn enclose(&self, x: &BitStr, width: &Ratio) -> Result<Enclosure> {
        let mut lo = Ratio::zero();
        let mut hi = Ratio::zero();
        for (w, p) in &self.family {
            let e = p.enclose(x, width)?;
            lo += w * &e.lo;
            hi += w * &e.hi;
        }
        Ok(Enclosure { lo, hi })
    }
}
