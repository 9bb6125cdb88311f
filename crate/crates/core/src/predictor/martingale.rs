//! Fair martingales `f(x) = (f(x0) + f(x1))/2` and their exchange with
//! distributions: `f(x) = 2^|x| p(x)` and `p(x) = 2^-|x| f(x)/f(Λ)`.

use std::collections::BTreeMap;

use super::families::{Table, TableRule};
use super::{exact_value, require_distribution, Predictor, StagedPredictor};
use crate::bits::BitStr;
use crate::error::{Error, Result};
use crate::ratio::Ratio;
use std::sync::Arc;

/// A positive fair martingale on a finite prefix-closed tree in which every
/// non-root node comes with its sibling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Martingale {
    values: BTreeMap<BitStr, Ratio>,
}

impl Martingale {
    pub fn new(values: BTreeMap<BitStr, Ratio>) -> Result<Self> {
        if !values.contains_key(&BitStr::empty()) {
            return Err(Error::NotPrefixClosed {
                missing: BitStr::empty(),
            });
        }
        for (x, v) in &values {
            if v.is_zero() {
                return Err(Error::NonPositiveMartingale(x.clone()));
            }
            if let Some(parent) = x.parent() {
                if !values.contains_key(&parent) {
                    return Err(Error::NotPrefixClosed { missing: parent });
                }
                let sibling = x.complement_last()?;
                if !values.contains_key(&sibling) {
                    return Err(Error::UnfairMartingale { at: parent });
                }
            }
        }
        let m = Self { values };
        m.check_fairness()?;
        Ok(m)
    }

    /// The constant martingale `c` on all strings of length at most `depth`.
    pub fn constant(c: Ratio, depth: usize) -> Result<Self> {
        Self::new(BitStr::all_up_to(depth).map(|x| (x, c.clone())).collect())
    }

    pub fn value(&self, x: &BitStr) -> Option<&Ratio> {
        self.values.get(x)
    }

    pub fn values(&self) -> &BTreeMap<BitStr, Ratio> {
        &self.values
    }

    /// Checks `2 f(x) = f(x0) + f(x1)` at every node whose children are present.
    pub fn check_fairness(&self) -> Result<()> {
        for (x, v) in &self.values {
            if let (Some(a), Some(b)) = (self.values.get(&x.child(0)), self.values.get(&x.child(1)))
            {
                if a + b != v.mul_pow2(1) {
                    return Err(Error::UnfairMartingale { at: x.clone() });
                }
            }
        }
        Ok(())
    }
}

/// `f(x) = 2^|x| p(x)` on all strings of length at most `depth`.
pub fn predictor_to_martingale(p: &dyn StagedPredictor, depth: usize) -> Result<Martingale> {
    require_distribution(p, "predictor_to_martingale")?;
    let mut values = BTreeMap::new();
    for x in BitStr::all_up_to(depth) {
        let v = exact_value(p, &x)?;
        if v.is_zero() {
            return Err(Error::NonPositiveMartingale(x));
        }
        values.insert(x.clone(), v.mul_pow2(x.len() as u64));
    }
    Martingale::new(values)
}

/// `p(x) = 2^-|x| f(x)/f(Λ)` on the martingale's tree, continued uniformly
/// below its leaves.
pub fn martingale_to_predictor(m: &Martingale) -> Result<Predictor> {
    let root = m.values[&BitStr::empty()].clone();
    let entries = m
        .values
        .iter()
        .map(|(x, v)| (x.clone(), (v / &root).div_pow2(x.len() as u64)))
        .collect();
    Ok(Arc::new(Table::new(
        entries,
        TableRule::UniformBelowLeaves,
    )?))
}
