//! Conditional probabilities derived from a predictor.
//!
//! Under the first interpretation (`p` is a lower bound on an unknown
//! distribution) the conditional probability of `w` after `v` is pinned to
//! an interval whose endpoints are attained by explicit witnesses. Under the
//! second interpretation (`p` generates strings and may halt) the ratios
//! `p(xy)/p(x)` and the chain product over `p(xw)/(p(xw)+p(xw⁻))` are
//! computed directly.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bits::BitStr;
use crate::error::{Error, Result};
use crate::predictor::{exact_value, Caps, Predictor, StagedPredictor};
use crate::ratio::Ratio;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalBounds {
    pub lower: Ratio,
    pub upper: Ratio,
}

/// `1 − Σ_{i=1..|x|} p(x(i)⁻)` at stage `n`, clamped at 0.
fn path_residual(p: &dyn StagedPredictor, x: &BitStr, stage: u64) -> Ratio {
    let off: Ratio = x.path_siblings().map(|s| p.approx(&s, stage)).sum();
    Ratio::one().saturating_sub(&off)
}

/// Sharp bounds on `p′(vw)/p′(v)` over all distributions `p′ ≥ p`.
///
/// The lower bound never decreases and the upper bound never increases as
/// the stage grows.
pub fn conditional_bounds(
    p: &dyn StagedPredictor,
    v: &BitStr,
    w: &BitStr,
    stage: u64,
) -> Result<ConditionalBounds> {
    if w.is_empty() {
        return Err(Error::EmptyString);
    }
    let vw = v.concat(w);
    let denom = path_residual(p, v, stage);
    let lower = p.approx(&vw, stage).div_or_zero(&denom);
    let upper = path_residual(p, &vw, stage).div_or_zero(&denom);
    Ok(ConditionalBounds { lower, upper })
}

/// Distributions dominating `p` whose conditionals `p′(vw)/p′(v)` equal the
/// lower and upper bound respectively.
///
/// On the comb `{x, x⁻ : x ⊑ vw}` the values follow the extremal
/// construction. Below any other node `u` the 1-child gets `p(u1)` and the
/// 0-child gets the rest, which keeps the witness above `p` everywhere.
pub fn extremal_distributions(
    p: Predictor,
    v: &BitStr,
    w: &BitStr,
) -> Result<(Predictor, Predictor)> {
    if w.is_empty() {
        return Err(Error::EmptyString);
    }
    if !p.caps().exact {
        return Err(Error::MissingCapability {
            op: "extremal_distributions",
            capability: "exact",
        });
    }
    let vw = v.concat(w);
    let residual = |x: &BitStr| -> Result<Ratio> {
        let mut off = Ratio::zero();
        for s in x.path_siblings() {
            off += exact_value(p.as_ref(), &s)?;
        }
        Ok(Ratio::one().saturating_sub(&off))
    };
    if residual(v)?.is_zero() {
        return Err(Error::BoundUndefined(v.clone()));
    }

    let mut upper = BTreeMap::new();
    for x in vw.prefixes() {
        upper.insert(x.clone(), residual(&x)?);
        if let Ok(sib) = x.complement_last() {
            let val = exact_value(p.as_ref(), &sib)?;
            upper.insert(sib, val);
        }
    }

    let mut lower = upper.clone();
    let target = exact_value(p.as_ref(), &vw)?;
    let sib = vw.complement_last()?;
    let parent = &upper[&vw.parent().expect("|vw| >= 1")];
    lower.insert(sib, parent.saturating_sub(&target));
    lower.insert(vw, target);

    let make = |fixed| -> Predictor {
        Arc::new(Witness {
            base: p.clone(),
            fixed,
        })
    };
    Ok((make(lower), make(upper)))
}

#[derive(Debug)]
struct Witness {
    base: Predictor,
    fixed: BTreeMap<BitStr, Ratio>,
}

impl Witness {
    fn eval(&self, x: &BitStr) -> Ratio {
        let anchor = (0..=x.len())
            .rev()
            .find(|&n| self.fixed.contains_key(&x.prefix(n)))
            .expect("the root is always fixed");
        let mut cur = self.fixed[&x.prefix(anchor)].clone();
        for i in anchor..x.len() {
            let one = self
                .base
                .value(&x.prefix(i).child(1))
                .expect("base predictor is exact");
            cur = if x.digit(i) == 1 {
                one
            } else {
                cur.saturating_sub(&one)
            };
        }
        cur
    }
}

impl StagedPredictor for Witness {
    fn approx(&self, x: &BitStr, _stage: u64) -> Ratio {
        self.eval(x)
    }

    fn caps(&self) -> Caps {
        Caps::DISTRIBUTION.with_dyadic(self.base.caps().dyadic_valued)
    }

    fn value(&self, x: &BitStr) -> Option<Ratio> {
        Some(self.eval(x))
    }
}

/// The two interpretations of a predictor's conditional probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CondMode {
    /// `p(xy)/p(x)`.
    Nonterminating,
    /// `Π p(xy(i+1)) / (p(xy(i+1)) + p(xy(i+1)⁻))`, starting from `p(x)/p(x)`.
    Halting,
}

/// Whether a conditional value is the exact limit or a stage snapshot.
/// Snapshots are not lower bounds: these ratios are not approachable from
/// below in general.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certainty {
    Exact,
    Uncertified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondValue {
    pub value: Ratio,
    pub certainty: Certainty,
}

pub fn cond_probability(
    p: &dyn StagedPredictor,
    x: &BitStr,
    y: &BitStr,
    mode: CondMode,
    stage: u64,
) -> CondValue {
    let exact = p.caps().exact && p.value(x).is_some();
    let eval = |s: &BitStr| -> Ratio {
        if exact {
            p.value(s).unwrap_or_else(|| p.approx(s, stage))
        } else {
            p.approx(s, stage)
        }
    };
    let base = eval(x);
    let value = match mode {
        CondMode::Nonterminating => eval(&x.concat(y)).div_or_zero(&base),
        CondMode::Halting => {
            let mut acc = base.div_or_zero(&base);
            let xy = x.concat(y);
            for i in x.len() + 1..=xy.len() {
                let here = eval(&xy.prefix(i));
                let other = eval(&xy.prefix(i).complement_last().expect("nonempty"));
                let denom = &here + &other;
                acc = acc * here.div_or_zero(&denom);
            }
            acc
        }
    };
    CondValue {
        value,
        certainty: if exact {
            Certainty::Exact
        } else {
            Certainty::Uncertified
        },
    }
}
