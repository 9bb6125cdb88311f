//! Staged predictors.
//!
//! A predictor is a map `p: X* → [0,1]` with `p(x) ≥ p(x0) + p(x1)`. Here it
//! is represented by its staged lower approximation `approx(x, n)`, which is
//! nondecreasing in the stage `n` and stage-wise subadditive. The limit is
//! only claimed when the predictor carries the `exact` capability.

use std::fmt;
use std::sync::Arc;

use crate::bits::BitStr;
use crate::error::{Error, Result};
use crate::ratio::Ratio;

mod families;
mod martingale;
mod redundancy;
mod transform;

pub use families::{bernoulli, dirac, from_fn, table_predictor, uniform, zero, TableRule};
pub use martingale::{martingale_to_predictor, predictor_to_martingale, Martingale};
pub use redundancy::{redundancy, RedundancyValue};
pub use transform::{
    mixture, normalize, squeeze_eval, squeezed, subadditivize, StagedFn, DEFAULT_SQUEEZE_CAP,
};

/// Capability flags a predictor declares about itself.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Caps {
    /// The limit satisfies `p(x) = p(x0) + p(x1)`.
    pub additive: bool,
    /// `p(Λ) = 1`.
    pub unit_root: bool,
    /// Enclosures of the limit of any width are computable.
    pub exact: bool,
    /// Every staged value is a dyadic rational.
    pub dyadic_valued: bool,
}

impl Caps {
    pub const NONE: Caps = Caps {
        additive: false,
        unit_root: false,
        exact: false,
        dyadic_valued: false,
    };

    /// Additive, unit root and exact.
    pub const DISTRIBUTION: Caps = Caps {
        additive: true,
        unit_root: true,
        exact: true,
        dyadic_valued: false,
    };

    pub fn is_distribution(&self) -> bool {
        self.additive && self.unit_root && self.exact
    }

    pub fn with_dyadic(mut self, dyadic: bool) -> Caps {
        self.dyadic_valued = dyadic;
        self
    }
}

/// Closed interval `[lo, hi]` known to contain a limit value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Ratio,
    pub hi: Ratio,
}

impl Enclosure {
    pub fn point(v: Ratio) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> Ratio {
        self.hi.saturating_sub(&self.lo)
    }

    pub fn contains(&self, v: &Ratio) -> bool {
        self.lo <= *v && *v <= self.hi
    }
}

pub trait StagedPredictor: Send + Sync + fmt::Debug {
    /// Certified lower bound on `p(x)` at stage `n`.
    fn approx(&self, x: &BitStr, stage: u64) -> Ratio;

    fn caps(&self) -> Caps;

    /// The exact limit `p(x)` when it is a known rational.
    fn value(&self, _x: &BitStr) -> Option<Ratio> {
        None
    }

    /// An enclosure of `p(x)` of width at most `width`.
    fn enclose(&self, x: &BitStr, _width: &Ratio) -> Result<Enclosure> {
        self.value(x)
            .map(Enclosure::point)
            .ok_or_else(|| Error::NotRational(x.clone()))
    }

    /// `p(x·digit) / p(x)` with `0/0 = 0`, when the limit values are known.
    /// Closed-form families override this to avoid building huge rationals
    /// along long streams.
    fn next_digit_ratio(&self, x: &BitStr, digit: u8) -> Option<Ratio> {
        let parent = self.value(x)?;
        let child = self.value(&x.child(digit))?;
        Some(child.div_or_zero(&parent))
    }
}

pub type Predictor = Arc<dyn StagedPredictor>;

/// The exact value of `p(x)`, or an error if the predictor cannot supply it.
pub fn exact_value(p: &dyn StagedPredictor, x: &BitStr) -> Result<Ratio> {
    p.value(x).ok_or_else(|| Error::NotRational(x.clone()))
}

/// Fails with [`Error::MissingCapability`] unless `p` is an exact rational
/// distribution.
pub fn require_distribution(p: &dyn StagedPredictor, op: &'static str) -> Result<()> {
    let caps = p.caps();
    if !caps.additive {
        return Err(Error::MissingCapability {
            op,
            capability: "additive",
        });
    }
    if !caps.unit_root {
        return Err(Error::MissingCapability {
            op,
            capability: "unit-root",
        });
    }
    if !caps.exact {
        return Err(Error::MissingCapability {
            op,
            capability: "exact",
        });
    }
    Ok(())
}

/// `approx(x,n) − approx(x0,n) − approx(x1,n)`.
pub fn surplus(p: &dyn StagedPredictor, x: &BitStr, stage: u64) -> Result<Ratio> {
    let parent = p.approx(x, stage);
    let left = p.approx(&x.child(0), stage);
    let right = p.approx(&x.child(1), stage);
    parent
        .checked_sub(&(&left + &right))
        .ok_or(Error::NotSubadditive {
            at: x.clone(),
            parent: Box::new(parent),
            left: Box::new(left),
            right: Box::new(right),
        })
}
