//! Finite binary strings.
//!
//! The derived ordering is lexicographic with every prefix sorting before its
//! extensions, so all extensions of `x` form one contiguous range in a
//! `BTreeMap<BitStr, _>`. Use [`shortlex_cmp`] when length-first order is
//! wanted.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite sequence of binary digits. The empty string is valid and is
/// written `.` in every text format.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitStr(Vec<u8>);

impl BitStr {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Builds a string from digits; any nonzero value counts as 1.
    pub fn from_digits<I: IntoIterator<Item = u8>>(digits: I) -> Self {
        Self(digits.into_iter().map(|d| u8::from(d != 0)).collect())
    }

    /// `digit` repeated `n` times.
    pub fn repeat(digit: u8, n: usize) -> Self {
        Self(vec![u8::from(digit != 0); n])
    }

    /// The `n`-bit big-endian binary expansion of `value`.
    pub fn from_index(value: u64, n: usize) -> Self {
        Self((0..n).rev().map(|i| ((value >> i) & 1) as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn digit(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn push(&mut self, digit: u8) {
        self.0.push(u8::from(digit != 0));
    }

    /// `x` followed by `digit`.
    pub fn child(&self, digit: u8) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(u8::from(digit != 0));
        Self(v)
    }

    pub fn children(&self) -> [Self; 2] {
        [self.child(0), self.child(1)]
    }

    /// Drops the last digit; `None` for the empty string.
    pub fn parent(&self) -> Option<Self> {
        if self.0.is_empty() {
            None
        } else {
            Some(Self(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// The prefix `x(n)`. Panics if `n > |x|`.
    pub fn prefix(&self, n: usize) -> Self {
        Self(self.0[..n].to_vec())
    }

    /// All prefixes `x(0), x(1), ..., x(|x|)` in increasing length.
    pub fn prefixes(&self) -> impl Iterator<Item = BitStr> + '_ {
        (0..=self.0.len()).map(move |n| self.prefix(n))
    }

    pub fn concat(&self, other: &BitStr) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    pub fn is_prefix_of(&self, other: &BitStr) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_proper_prefix_of(&self, other: &BitStr) -> bool {
        self.0.len() < other.0.len() && self.is_prefix_of(other)
    }

    /// Whether one of the two strings is a prefix of the other.
    pub fn comparable(&self, other: &BitStr) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// `x⁻`: the string with its last digit complemented.
    pub fn complement_last(&self) -> Result<Self> {
        let mut v = self.0.clone();
        match v.last_mut() {
            Some(d) => {
                *d ^= 1;
                Ok(Self(v))
            }
            None => Err(Error::EmptyString),
        }
    }

    /// `x(i)⁻` for `i` in `1..=|x|`: the siblings hanging off the path to `x`.
    pub fn path_siblings(&self) -> impl Iterator<Item = BitStr> + '_ {
        (1..=self.0.len()).map(move |i| {
            let mut v = self.0[..i].to_vec();
            v[i - 1] ^= 1;
            Self(v)
        })
    }

    /// Longest common prefix.
    pub fn common_prefix(&self, other: &BitStr) -> Self {
        let n = self
            .0
            .iter()
            .zip(&other.0)
            .take_while(|(a, b)| a == b)
            .count();
        self.prefix(n)
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&d| d == 1).count()
    }

    /// All `2^n` strings of length `n` in lexicographic order.
    pub fn all_of_len(n: usize) -> impl Iterator<Item = BitStr> {
        assert!(n < 64, "length {n} is too large to enumerate");
        (0..(1u64 << n)).map(move |i| BitStr::from_index(i, n))
    }

    /// All strings of length at most `n` in shortlex order.
    pub fn all_up_to(n: usize) -> impl Iterator<Item = BitStr> {
        (0..=n).flat_map(BitStr::all_of_len)
    }
}

/// Length first, then lexicographic.
pub fn shortlex_cmp(a: &BitStr, b: &BitStr) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl fmt::Display for BitStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(".");
        }
        for d in &self.0 {
            f.write_str(if *d == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BitStr {
    type Err = Error;

    /// Parses `.` as the empty string, otherwise a nonempty run of `0`/`1`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "." {
            return Ok(Self::empty());
        }
        if s.is_empty() {
            return Err(parse_err(
                1,
                "empty bit string (write '.' for the empty string)",
            ));
        }
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(parse_err(i + 1, &format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Self)
    }
}

fn parse_err(column: usize, message: &str) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.to_string(),
    }
}
