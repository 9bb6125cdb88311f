//! Frequency of confirmed next-digit predictions whose conditional
//! probability lies in a window `[r, s]` with `1/2 < r ≤ s < 1`.

use crate::bits::BitStr;
use crate::error::{Error, Result};
use crate::predictor::{require_distribution, StagedPredictor};
use crate::ratio::Ratio;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// No prediction fell in the window.
    Vacuous,
    Within,
    Below,
    Above,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Vacuous => "vacuous",
            Verdict::Within => "within",
            Verdict::Below => "below",
            Verdict::Above => "above",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CalibrationReport {
    pub r: Ratio,
    pub s: Ratio,
    pub tolerance: Ratio,
    /// Positions `i` and digits `w` with `p(z(i)w)/p(z(i))` in the window.
    pub predictions: u64,
    /// Positions `i` with `p(z(i+1))/p(z(i))` in the window.
    pub confirmed: u64,
    /// `confirmed / predictions`, absent when there were no predictions.
    pub ratio: Option<Ratio>,
    pub verdict: Verdict,
}

pub fn check_window(r: &Ratio, s: &Ratio) -> Result<()> {
    let half = Ratio::new(1, 2);
    if *r <= half || s >= &Ratio::one() || r > s {
        return Err(Error::InvalidWindow {
            r: r.clone(),
            s: s.clone(),
        });
    }
    Ok(())
}

/// Counts over positions `i = 0 .. |z|−1`. The verdict compares the ratio
/// with `[r − tolerance, s + tolerance]`.
pub fn calibration_report(
    p: &dyn StagedPredictor,
    z: &BitStr,
    r: &Ratio,
    s: &Ratio,
    tolerance: &Ratio,
) -> Result<CalibrationReport> {
    check_window(r, s)?;
    require_distribution(p, "calibration_report")?;
    let in_window = |v: &Ratio| r <= v && v <= s;
    let mut predictions = 0u64;
    let mut confirmed = 0u64;
    let mut prefix = BitStr::empty();
    for &d in z.digits() {
        let ratios = [0u8, 1].map(|w| p.next_digit_ratio(&prefix, w));
        let [Some(r0), Some(r1)] = ratios else {
            return Err(Error::NotRational(prefix));
        };
        let actual = if d == 0 { &r0 } else { &r1 };
        if actual.is_zero() {
            prefix.push(d);
            return Err(Error::ZeroProbability(prefix));
        }
        predictions += u64::from(in_window(&r0)) + u64::from(in_window(&r1));
        confirmed += u64::from(in_window(actual));
        prefix.push(d);
    }
    let ratio = (predictions > 0).then(|| Ratio::new(confirmed, predictions));
    let verdict = match &ratio {
        None => Verdict::Vacuous,
        Some(q) if *q < r.saturating_sub(tolerance) => Verdict::Below,
        Some(q) if *q > s + tolerance => Verdict::Above,
        Some(_) => Verdict::Within,
    };
    Ok(CalibrationReport {
        r: r.clone(),
        s: s.clone(),
        tolerance: tolerance.clone(),
        predictions,
        confirmed,
        ratio,
        verdict,
    })
}
