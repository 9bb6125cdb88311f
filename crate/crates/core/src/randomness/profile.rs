//! Finite evidence for growth of redundancy along a stream.

use super::growth::GrowthFunction;
use crate::bits::BitStr;
use crate::predictor::StagedPredictor;
use crate::ratio::{format_log2, Ratio};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileRow {
    pub n: usize,
    /// `2^n · p(z(n))`.
    pub ratio: Ratio,
    pub growth: u64,
}

impl ProfileRow {
    /// `rp(z(n))`, nine fractional digits or `-inf`.
    pub fn redundancy_display(&self) -> String {
        format_log2(&self.ratio, 9)
    }

    /// `rp(z(n)) / g(n)`; `None` when `g(n) = 0` or `p(z(n)) = 0`.
    pub fn over_growth(&self) -> Option<f64> {
        if self.growth == 0 {
            return None;
        }
        self.ratio.log2().map(|l| l / self.growth as f64)
    }

    pub fn over_growth_display(&self) -> String {
        match (self.growth, self.ratio.log2()) {
            (0, _) => "undefined".to_string(),
            (_, None) => "-inf".to_string(),
            (g, Some(l)) => {
                let s = format!("{:.9}", l / g as f64);
                if s.trim_start_matches('-')
                    .chars()
                    .all(|c| c == '0' || c == '.')
                {
                    s.trim_start_matches('-').to_string()
                } else {
                    s
                }
            }
        }
    }
}

/// Rows for `n = 1..=|z|`. Exact predictors are followed digit by digit
/// through their conditional ratios; others are read at `stage`.
pub fn growth_profile(
    p: &dyn StagedPredictor,
    z: &BitStr,
    g: &GrowthFunction,
    stage: u64,
) -> Vec<ProfileRow> {
    let mut rows = Vec::with_capacity(z.len());
    let chained = p.caps().exact && p.value(&BitStr::empty()).is_some();
    let mut prefix = BitStr::empty();
    let mut ratio = if chained {
        p.value(&prefix).expect("checked above")
    } else {
        Ratio::zero()
    };
    for (i, &d) in z.digits().iter().enumerate() {
        let n = i + 1;
        let next = if chained {
            p.next_digit_ratio(&prefix, d)
        } else {
            None
        };
        prefix.push(d);
        ratio = match next {
            Some(c) if !ratio.is_zero() => (ratio * c).mul_pow2(1),
            Some(_) => Ratio::zero(),
            None => p.approx(&prefix, stage).mul_pow2(n as u64),
        };
        rows.push(ProfileRow {
            n,
            ratio: ratio.clone(),
            growth: g.eval(n as u64),
        });
    }
    rows
}
