use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// Levels `0..=WEIGHT_TRUNCATION` are summed exactly; the rest is covered by
/// a certified tail bound.
pub const WEIGHT_TRUNCATION: u32 = 64;

/// A nondecreasing weight `f` on critical levels with
/// `Σ_m f(m)·2^{-m-1} ≤ 1`.
#[derive(Clone)]
pub struct WeightFunction {
    name: String,
    f: Arc<dyn Fn(u32) -> Ratio + Send + Sync>,
    tail: Ratio,
}

impl fmt::Debug for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightFunction({})", self.name)
    }
}

impl WeightFunction {
    /// `tail` must bound `Σ_{m > WEIGHT_TRUNCATION} f(m)·2^{-m-1}` from above.
    pub fn new<F>(name: &str, f: F, tail: Ratio) -> Result<Self>
    where
        F: Fn(u32) -> Ratio + Send + Sync + 'static,
    {
        let w = Self {
            name: name.to_string(),
            f: Arc::new(f),
            tail,
        };
        let mut prev = Ratio::zero();
        for m in 0..=WEIGHT_TRUNCATION {
            let v = w.eval(m);
            if v < prev {
                return Err(Error::InvalidWeight(format!(
                    "{name} decreases at level {m}"
                )));
            }
            prev = v;
        }
        let total = w.partial_sum() + &w.tail;
        if total > Ratio::one() {
            return Err(Error::InvalidWeight(format!(
                "{name}: weighted sum bound {total} exceeds 1"
            )));
        }
        Ok(w)
    }

    /// `f(m) = m`; the weighted sum is exactly 1.
    pub fn linear() -> Self {
        // Σ_{m≥M} m·2^{-m-1} = (M+1)·2^{-M}
        let m = WEIGHT_TRUNCATION as u64 + 1;
        Self::new(
            "linear",
            |m| Ratio::from_integer(m as u64),
            Ratio::from_integer(m + 1).div_pow2(m),
        )
        .expect("linear weight is valid")
    }

    pub fn zero() -> Self {
        Self::new("zero", |_| Ratio::zero(), Ratio::zero()).expect("zero weight is valid")
    }

    /// `f(m) = 2^m / ((m+2)·L(m)²)` where `L(m)` is `log2(m+5)` rounded up
    /// to a multiple of 1/1024, making `f` rational and no larger than
    /// `2^m / ((m+2)·log2²(m+5))`.
    pub fn log_penalized() -> Self {
        // Tail: Σ_{m≥65} 1/(2(m+2)log2²(m+2)) ≤ ln2 / (2·log2 66) < 7/120.
        Self::new("log-penalized", log_penalized_value, Ratio::new(7, 120))
            .expect("log-penalized weight is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, m: u32) -> Ratio {
        (self.f)(m)
    }

    pub fn tail_bound(&self) -> &Ratio {
        &self.tail
    }

    /// `Σ_{m ≤ WEIGHT_TRUNCATION} f(m)·2^{-m-1}`.
    pub fn partial_sum(&self) -> Ratio {
        (0..=WEIGHT_TRUNCATION)
            .map(|m| self.eval(m).div_pow2(m as u64 + 1))
            .sum()
    }
}

fn log_penalized_value(m: u32) -> Ratio {
    // ceil(1024·log2(N)) = bits(N^1024 − 1)
    let n = BigUint::from(m as u64 + 5).pow(1024u32);
    let k = (n - 1u32).bits();
    let num = (BigUint::from(1u32) << m as usize) * BigUint::from(1024u64 * 1024);
    let den = BigUint::from(m as u64 + 2) * BigUint::from(k) * BigUint::from(k);
    Ratio::from_big(num, den).expect("positive denominator")
}
