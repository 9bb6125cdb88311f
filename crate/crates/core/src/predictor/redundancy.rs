//! Redundancy `rp(x) = |x| + log p(x)`, kept as the exact ratio `2^|x|·p(x)`.

use std::fmt;

use super::StagedPredictor;
use crate::bits::BitStr;
use crate::ratio::{format_log2, Ratio};

/// Digits after the point when a redundancy is rendered.
pub const LOG_DIGITS: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedundancyValue {
    pub ratio: Ratio,
}

impl RedundancyValue {
    pub fn new(ratio: Ratio) -> Self {
        Self { ratio }
    }

    /// `log2(ratio)`, or `None` for `-inf`.
    pub fn log2(&self) -> Option<f64> {
        self.ratio.log2()
    }

    /// `log2(ratio)` with nine fractional digits, or `-inf`.
    pub fn display_log2(&self) -> String {
        format_log2(&self.ratio, LOG_DIGITS)
    }
}

impl fmt::Display for RedundancyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (log2 {})", self.ratio, self.display_log2())
    }
}

pub fn redundancy(p: &dyn StagedPredictor, x: &BitStr, stage: u64) -> RedundancyValue {
    RedundancyValue::new(p.approx(x, stage).mul_pow2(x.len() as u64))
}
