//! Canonical predictor families.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{Caps, Predictor, StagedFn, StagedPredictor};
use crate::bits::BitStr;
use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// `p(x) = 2^-|x|`.
pub fn uniform() -> Predictor {
    Arc::new(Uniform)
}

#[derive(Debug)]
struct Uniform;

impl StagedPredictor for Uniform {
    fn approx(&self, x: &BitStr, _stage: u64) -> Ratio {
        Ratio::pow2_neg(x.len() as u64)
    }

    fn caps(&self) -> Caps {
        Caps::DISTRIBUTION.with_dyadic(true)
    }

    fn value(&self, x: &BitStr) -> Option<Ratio> {
        Some(self.approx(x, 0))
    }

    fn next_digit_ratio(&self, _x: &BitStr, _digit: u8) -> Option<Ratio> {
        Some(Ratio::new(1, 2))
    }
}

/// The zero predictor.
pub fn zero() -> Predictor {
    Arc::new(Zero)
}

#[derive(Debug)]
struct Zero;

impl StagedPredictor for Zero {
    fn approx(&self, _x: &BitStr, _stage: u64) -> Ratio {
        Ratio::zero()
    }

    fn caps(&self) -> Caps {
        Caps {
            additive: true,
            unit_root: false,
            exact: true,
            dyadic_valued: true,
        }
    }

    fn value(&self, _x: &BitStr) -> Option<Ratio> {
        Some(Ratio::zero())
    }
}

/// `p(x) = r^{ones(x)} (1−r)^{zeros(x)}`.
pub fn bernoulli(r: Ratio) -> Result<Predictor> {
    if !r.is_probability() {
        return Err(Error::NotProbability { value: r });
    }
    let q = Ratio::one() - &r;
    Ok(Arc::new(Bernoulli { r, q }))
}

struct Bernoulli {
    r: Ratio,
    q: Ratio,
}

impl fmt::Debug for Bernoulli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bernoulli({})", self.r)
    }
}

impl Bernoulli {
    fn vanishes(&self, x: &BitStr) -> bool {
        (self.r.is_zero() && x.count_ones() > 0) || (self.q.is_zero() && x.count_ones() < x.len())
    }
}

impl StagedPredictor for Bernoulli {
    fn approx(&self, x: &BitStr, _stage: u64) -> Ratio {
        let ones = x.count_ones();
        let zeros = x.len() - ones;
        self.r.pow(ones as u32) * self.q.pow(zeros as u32)
    }

    fn caps(&self) -> Caps {
        Caps::DISTRIBUTION.with_dyadic(self.r.is_dyadic())
    }

    fn value(&self, x: &BitStr) -> Option<Ratio> {
        Some(self.approx(x, 0))
    }

    fn next_digit_ratio(&self, x: &BitStr, digit: u8) -> Option<Ratio> {
        if self.vanishes(x) {
            return Some(Ratio::zero());
        }
        Some(if digit == 0 {
            self.q.clone()
        } else {
            self.r.clone()
        })
    }
}

/// Point mass on the periodic sequence `pattern pattern pattern ...`.
pub fn dirac(pattern: BitStr) -> Result<Predictor> {
    if pattern.is_empty() {
        return Err(Error::EmptyString);
    }
    Ok(Arc::new(Dirac { pattern }))
}

#[derive(Debug)]
struct Dirac {
    pattern: BitStr,
}

impl Dirac {
    fn on_path(&self, x: &BitStr) -> bool {
        let k = self.pattern.len();
        x.digits()
            .iter()
            .enumerate()
            .all(|(i, &d)| d == self.pattern.digit(i % k))
    }
}

impl StagedPredictor for Dirac {
    fn approx(&self, x: &BitStr, _stage: u64) -> Ratio {
        if self.on_path(x) {
            Ratio::one()
        } else {
            Ratio::zero()
        }
    }

    fn caps(&self) -> Caps {
        Caps::DISTRIBUTION.with_dyadic(true)
    }

    fn value(&self, x: &BitStr) -> Option<Ratio> {
        Some(self.approx(x, 0))
    }

    fn next_digit_ratio(&self, x: &BitStr, digit: u8) -> Option<Ratio> {
        let k = self.pattern.len();
        let hit = self.on_path(x) && self.pattern.digit(x.len() % k) == u8::from(digit != 0);
        Some(if hit { Ratio::one() } else { Ratio::zero() })
    }
}

/// How a table predictor answers for strings that are not keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableRule {
    /// Missing strings have value 0.
    ZeroOutside,
    /// Keys must be closed under prefixes; missing strings have value 0.
    ClosedUnderPrefix,
    /// Below a leaf `w` of the table, `p(x) = p(w)·2^{|w|−|x|}`; other
    /// missing strings have value 0.
    UniformBelowLeaves,
}

/// A stage-independent predictor given by a finite table.
pub fn table_predictor<I>(entries: I, rule: TableRule) -> Result<Predictor>
where
    I: IntoIterator<Item = (BitStr, Ratio)>,
{
    Ok(Arc::new(Table::new(entries.into_iter().collect(), rule)?))
}

#[derive(Debug)]
pub(crate) struct Table {
    entries: BTreeMap<BitStr, Ratio>,
    rule: TableRule,
    caps: Caps,
}

impl Table {
    pub(crate) fn new(entries: BTreeMap<BitStr, Ratio>, rule: TableRule) -> Result<Self> {
        for v in entries.values() {
            if !v.is_probability() {
                return Err(Error::NotProbability { value: v.clone() });
            }
        }
        if rule == TableRule::ClosedUnderPrefix {
            for x in entries.keys() {
                if let Some(p) = x.parent() {
                    if !entries.contains_key(&p) {
                        return Err(Error::NotPrefixClosed { missing: p });
                    }
                }
            }
        }
        let mut table = Self {
            entries,
            rule,
            caps: Caps::NONE,
        };
        // Only keys and their parents can have nonzero surplus.
        let mut nodes: Vec<BitStr> = table.entries.keys().cloned().collect();
        nodes.extend(table.entries.keys().filter_map(BitStr::parent));
        nodes.sort();
        nodes.dedup();
        let mut additive = true;
        for x in &nodes {
            let parent = table.lookup(x);
            let left = table.lookup(&x.child(0));
            let right = table.lookup(&x.child(1));
            let sum = &left + &right;
            if sum > parent {
                return Err(Error::NotSubadditive {
                    at: x.clone(),
                    parent: Box::new(parent),
                    left: Box::new(left),
                    right: Box::new(right),
                });
            }
            additive &= sum == parent;
        }
        table.caps = Caps {
            additive,
            unit_root: table.lookup(&BitStr::empty()).is_one(),
            exact: true,
            dyadic_valued: table.entries.values().all(Ratio::is_dyadic),
        };
        Ok(table)
    }

    fn lookup(&self, x: &BitStr) -> Ratio {
        if let Some(v) = self.entries.get(x) {
            return v.clone();
        }
        if self.rule != TableRule::UniformBelowLeaves {
            return Ratio::zero();
        }
        for n in (0..x.len()).rev() {
            let w = x.prefix(n);
            if let Some(v) = self.entries.get(&w) {
                let leaf = !self.entries.contains_key(&w.child(0))
                    && !self.entries.contains_key(&w.child(1));
                return if leaf {
                    v.div_pow2((x.len() - n) as u64)
                } else {
                    Ratio::zero()
                };
            }
        }
        Ratio::zero()
    }
}

impl StagedPredictor for Table {
    fn approx(&self, x: &BitStr, _stage: u64) -> Ratio {
        self.lookup(x)
    }

    fn caps(&self) -> Caps {
        self.caps
    }

    fn value(&self, x: &BitStr) -> Option<Ratio> {
        Some(self.lookup(x))
    }
}

/// A predictor given directly by its staged values. The caller vouches for
/// the stage monotonicity, subadditivity and the declared flags; `exact` is
/// cleared because no limit is available (wrap with
/// [`squeezed`](super::squeezed) to recover enclosures of a distribution).
pub fn from_fn<F>(caps: Caps, approx: F) -> Predictor
where
    F: Fn(&BitStr, u64) -> Ratio + Send + Sync + 'static,
{
    Arc::new(FnPredictor {
        approx: Arc::new(approx),
        caps: Caps {
            exact: false,
            ..caps
        },
    })
}

pub(crate) struct FnPredictor {
    pub(crate) approx: StagedFn,
    pub(crate) caps: Caps,
}

impl fmt::Debug for FnPredictor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "from_fn({:?})", self.caps)
    }
}

impl StagedPredictor for FnPredictor {
    fn approx(&self, x: &BitStr, stage: u64) -> Ratio {
        (self.approx)(x, stage)
    }

    fn caps(&self) -> Caps {
        self.caps
    }
}
