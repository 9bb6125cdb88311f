use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ratio::Ratio;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthKind {
    /// `⌊α·n⌋` with `α > 0`.
    Linear(Ratio),
    /// `⌊√n⌋`.
    Sqrt,
    /// `⌊log2 n⌋`, and 0 at `n = 0`.
    Log2,
    /// Listed values for `n = 0, 1, ...`, then one more per step.
    Table(Vec<u64>),
}

/// A nondecreasing unbounded `g: N → N`, plus a constant offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthFunction {
    kind: GrowthKind,
    offset: u64,
}

impl GrowthFunction {
    pub fn new(kind: GrowthKind, offset: u64) -> Result<Self> {
        match &kind {
            GrowthKind::Linear(a) if a.is_zero() => {
                return Err(Error::InvalidGrowth("linear slope must be positive".into()))
            }
            GrowthKind::Table(v) if v.is_empty() => {
                return Err(Error::InvalidGrowth("table must not be empty".into()))
            }
            GrowthKind::Table(v) if v.windows(2).any(|w| w[1] < w[0]) => {
                return Err(Error::InvalidGrowth("table must be nondecreasing".into()))
            }
            _ => {}
        }
        Ok(Self { kind, offset })
    }

    pub fn linear(alpha: Ratio) -> Result<Self> {
        Self::new(GrowthKind::Linear(alpha), 0)
    }

    pub fn sqrt() -> Self {
        Self {
            kind: GrowthKind::Sqrt,
            offset: 0,
        }
    }

    pub fn log2() -> Self {
        Self {
            kind: GrowthKind::Log2,
            offset: 0,
        }
    }

    pub fn table(values: Vec<u64>) -> Result<Self> {
        Self::new(GrowthKind::Table(values), 0)
    }

    pub fn with_offset(mut self, offset: u64) -> Self {
        self.offset = offset;
        self
    }

    pub fn kind(&self) -> &GrowthKind {
        &self.kind
    }

    pub fn eval(&self, n: u64) -> u64 {
        let base = match &self.kind {
            GrowthKind::Linear(a) => (a.numer() * BigUint::from(n) / a.denom())
                .to_u64()
                .unwrap_or(u64::MAX),
            GrowthKind::Sqrt => n.isqrt(),
            GrowthKind::Log2 => n.checked_ilog2().unwrap_or(0) as u64,
            GrowthKind::Table(v) => {
                let last = v.len() as u64 - 1;
                if n <= last {
                    v[n as usize]
                } else {
                    v[last as usize] + (n - last)
                }
            }
        };
        base.saturating_add(self.offset)
    }
}

impl fmt::Display for GrowthFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GrowthKind::Linear(a) => write!(f, "linear {a}")?,
            GrowthKind::Sqrt => f.write_str("sqrt")?,
            GrowthKind::Log2 => f.write_str("log2")?,
            GrowthKind::Table(v) => {
                let parts: Vec<String> = v.iter().map(u64::to_string).collect();
                write!(f, "table {}", parts.join(","))?
            }
        }
        if self.offset > 0 {
            write!(f, " + {}", self.offset)?;
        }
        Ok(())
    }
}

impl FromStr for GrowthFunction {
    type Err = Error;

    /// `linear A`, `sqrt`, `log2` or `table V,V,...`, each optionally
    /// followed by `+ OFFSET`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidGrowth(format!("{msg} in {s:?}"));
        let (body, offset) = match s.split_once('+') {
            Some((body, off)) => (
                body.trim(),
                off.trim().parse::<u64>().map_err(|_| bad("bad offset"))?,
            ),
            None => (s.trim(), 0),
        };
        let mut words = body.split_whitespace();
        let kind = match (words.next(), words.next()) {
            (Some("linear"), Some(a)) => {
                GrowthKind::Linear(a.parse().map_err(|_| bad("bad slope"))?)
            }
            (Some("sqrt"), None) => GrowthKind::Sqrt,
            (Some("log2"), None) => GrowthKind::Log2,
            (Some("table"), Some(vals)) => GrowthKind::Table(
                vals.split(',')
                    .map(|v| v.trim().parse::<u64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad("bad table value"))?,
            ),
            _ => return Err(bad("unknown growth function")),
        };
        if words.next().is_some() {
            return Err(bad("trailing input"));
        }
        Self::new(kind, offset)
    }
}
