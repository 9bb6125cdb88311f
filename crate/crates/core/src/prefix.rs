//! Prefix-free sets and their measure `σS = Σ 2^-|x|`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bits::BitStr;
use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// A finite set of strings none of which is a proper prefix of another.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixFreeSet {
    members: BTreeSet<BitStr>,
}

impl PrefixFreeSet {
    pub fn new<I: IntoIterator<Item = BitStr>>(members: I) -> Result<Self> {
        let members: BTreeSet<BitStr> = members.into_iter().collect();
        if let Some((shorter, longer)) = first_prefix_pair(&members) {
            return Err(Error::NotPrefixFree { shorter, longer });
        }
        Ok(Self { members })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn members(&self) -> &BTreeSet<BitStr> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &BitStr) -> bool {
        self.members.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BitStr> {
        self.members.iter()
    }

    /// `Σ_{x∈S} 2^-|x|`, exact.
    pub fn sigma(&self) -> Ratio {
        sigma_of(self.members.iter())
    }
}

impl<'a> IntoIterator for &'a PrefixFreeSet {
    type Item = &'a BitStr;
    type IntoIter = std::collections::btree_set::Iter<'a, BitStr>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// `σS` for a set that must be prefix-free.
pub fn sigma<'a, I: IntoIterator<Item = &'a BitStr>>(set: I) -> Result<Ratio> {
    let members: BTreeSet<BitStr> = set.into_iter().cloned().collect();
    if let Some((shorter, longer)) = first_prefix_pair(&members) {
        return Err(Error::NotPrefixFree { shorter, longer });
    }
    Ok(sigma_of(members.iter()))
}

/// Sums `2^-|x|` over a common denominator without checking prefix-freeness.
pub(crate) fn sigma_of<'a, I: Iterator<Item = &'a BitStr>>(members: I) -> Ratio {
    let members: Vec<&BitStr> = members.collect();
    let Some(depth) = members.iter().map(|x| x.len()).max() else {
        return Ratio::zero();
    };
    let mut num = BigUint::zero();
    for x in members {
        num += BigUint::one() << (depth - x.len());
    }
    Ratio::from_big(num, BigUint::one() << depth).expect("nonzero denominator")
}

/// True iff no member properly extends another.
pub fn is_prefix_free<'a, I: IntoIterator<Item = &'a BitStr>>(set: I) -> bool {
    let members: BTreeSet<BitStr> = set.into_iter().cloned().collect();
    first_prefix_pair(&members).is_none()
}

/// In lexicographic order a proper prefix sorts immediately before some
/// extension of it, so checking neighbours suffices.
fn first_prefix_pair(members: &BTreeSet<BitStr>) -> Option<(BitStr, BitStr)> {
    members
        .iter()
        .zip(members.iter().skip(1))
        .find(|(a, b)| a.is_proper_prefix_of(b))
        .map(|(a, b)| (a.clone(), b.clone()))
}
