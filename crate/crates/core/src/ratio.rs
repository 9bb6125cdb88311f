//! Exact nonnegative rationals and dyadic rationals.
//!
//! Every probability in the crate is a [`Ratio`]. Logarithms are computed only
//! for display, through [`Ratio::log2`].

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio as NumRatio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

type Inner = NumRatio<BigUint>;

/// Exact nonnegative rational kept in lowest terms.
///
/// Subtraction panics when the result would be negative, the same way `u64`
/// subtraction does; use [`Ratio::checked_sub`] when the order is not known.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Ratio(Inner);

impl Ratio {
    pub fn zero() -> Self {
        Self(Inner::zero())
    }

    pub fn one() -> Self {
        Self(Inner::one())
    }

    /// `num/den`; panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Self(Inner::new(num.into(), den.into()))
    }

    pub fn from_big(num: BigUint, den: BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidRatio("zero denominator".into()));
        }
        Ok(Self(Inner::new(num, den)))
    }

    pub fn from_integer(n: u64) -> Self {
        Self(Inner::from_integer(n.into()))
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u64) -> Self {
        Self(Inner::new(BigUint::one(), BigUint::one() << k))
    }

    /// `2^k`.
    pub fn pow2(k: u64) -> Self {
        Self(Inner::from_integer(BigUint::one() << k))
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn checked_sub(&self, rhs: &Ratio) -> Option<Ratio> {
        if *self >= *rhs {
            Some(Self(&self.0 - &rhs.0))
        } else {
            None
        }
    }

    /// `max(self - rhs, 0)`.
    pub fn saturating_sub(&self, rhs: &Ratio) -> Ratio {
        self.checked_sub(rhs).unwrap_or_else(Ratio::zero)
    }

    /// `self / rhs`, with any division by zero replaced by 0 (the `0/0 = 0`
    /// convention for conditional probabilities).
    pub fn div_or_zero(&self, rhs: &Ratio) -> Ratio {
        if rhs.is_zero() {
            Ratio::zero()
        } else {
            self / rhs
        }
    }

    pub fn pow(&self, exp: u32) -> Ratio {
        Self(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// `self * 2^k`.
    pub fn mul_pow2(&self, k: u64) -> Ratio {
        Self(Inner::new(self.0.numer() << k, self.0.denom().clone()))
    }

    /// `self * 2^-k`.
    pub fn div_pow2(&self, k: u64) -> Ratio {
        Self(Inner::new(self.0.numer().clone(), self.0.denom() << k))
    }

    pub fn is_dyadic(&self) -> bool {
        let d = self.0.denom();
        (d & (d - BigUint::one())).is_zero()
    }

    pub fn is_probability(&self) -> bool {
        self.0 <= Inner::one()
    }

    /// Largest dyadic with `bits` fractional digits not exceeding `self`.
    pub fn floor_dyadic(&self, bits: u64) -> Dyadic {
        let scaled = (self.0.numer() << bits) / self.0.denom();
        Dyadic::new(scaled, bits)
    }

    pub fn to_f64(&self) -> f64 {
        let (n, d) = (self.0.numer(), self.0.denom());
        if let (Some(a), Some(b)) = (n.to_f64(), d.to_f64()) {
            if a.is_finite() && b.is_finite() && b != 0.0 {
                return a / b;
            }
        }
        self.log2().map_or(0.0, f64::exp2)
    }

    /// Base-2 logarithm for display; `None` stands for `-inf` (value zero).
    pub fn log2(&self) -> Option<f64> {
        if self.is_zero() {
            return None;
        }
        Some(big_log2(self.0.numer()) - big_log2(self.0.denom()))
    }

    pub fn min(self, other: Ratio) -> Ratio {
        Ord::min(self, other)
    }

    pub fn max(self, other: Ratio) -> Ratio {
        Ord::max(self, other)
    }
}

fn big_log2(n: &BigUint) -> f64 {
    let bits = n.bits();
    let shift = bits.saturating_sub(64);
    let top = (n >> shift).to_u64().expect("top 64 bits fit");
    (top as f64).log2() + shift as f64
}

/// Renders `log2(value)` with `digits` fractional digits, or `-inf` for zero.
pub fn format_log2(value: &Ratio, digits: usize) -> String {
    match value.log2() {
        None => "-inf".to_string(),
        Some(l) => {
            let s = format!("{l:.digits$}");
            // avoid "-0.000000000"
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

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Ratio {
    type Err = Error;

    /// Accepts `num/den` or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRatio(format!("cannot parse {s:?} as num/den"));
        let parse_int = |t: &str| -> Result<BigUint> {
            let t = t.trim();
            if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigUint>().map_err(|_| bad())
        };
        match s.split_once('/') {
            Some((n, d)) => Ratio::from_big(parse_int(n)?, parse_int(d)?),
            None => Ok(Self(Inner::from_integer(parse_int(s)?))),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Ratio> for &Ratio {
            type Output = Ratio;
            fn $method(self, rhs: &Ratio) -> Ratio {
                Ratio((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Ratio> for Ratio {
            type Output = Ratio;
            fn $method(self, rhs: Ratio) -> Ratio {
                Ratio(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Ratio> for Ratio {
            type Output = Ratio;
            fn $method(self, rhs: &Ratio) -> Ratio {
                Ratio(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Ratio> for &Ratio {
            type Output = Ratio;
            fn $method(self, rhs: Ratio) -> Ratio {
                Ratio((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Mul, mul);
forward_binop!(Div, div);
forward_binop!(Sub, sub);

impl AddAssign<&Ratio> for Ratio {
    fn add_assign(&mut self, rhs: &Ratio) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Ratio {
    fn add_assign(&mut self, rhs: Ratio) {
        self.0 += rhs.0;
    }
}

impl Sum for Ratio {
    fn sum<I: Iterator<Item = Ratio>>(iter: I) -> Ratio {
        iter.fold(Ratio::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Ratio> for Ratio {
    fn sum<I: Iterator<Item = &'a Ratio>>(iter: I) -> Ratio {
        iter.fold(Ratio::zero(), |a, b| a + b)
    }
}

/// Nonnegative dyadic rational `mantissa * 2^-exponent`, canonical with an odd
/// (or zero) mantissa.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigUint,
    exponent: u64,
}

impl Dyadic {
    pub fn new(mantissa: BigUint, exponent: u64) -> Self {
        if mantissa.is_zero() {
            return Self {
                mantissa,
                exponent: 0,
            };
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0).min(exponent);
        Self {
            mantissa: mantissa >> tz,
            exponent: exponent - tz,
        }
    }

    pub fn zero() -> Self {
        Self::new(BigUint::zero(), 0)
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mantissa
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn to_ratio(&self) -> Ratio {
        Ratio(Inner::new(
            self.mantissa.clone(),
            BigUint::one() << self.exponent,
        ))
    }

    /// Positions `i` of the set binary digits `2^-i`, most significant first.
    /// Only meaningful for values below 2.
    pub fn set_digits(&self) -> Vec<u64> {
        let bits = self.mantissa.bits();
        (0..bits)
            .rev()
            .filter(|&b| self.mantissa.bit(b))
            .map(|b| self.exponent - b)
            .collect()
    }
}

impl TryFrom<&Ratio> for Dyadic {
    type Error = Error;

    fn try_from(r: &Ratio) -> Result<Self> {
        if !r.is_dyadic() {
            return Err(Error::NotDyadic { value: r.clone() });
        }
        let exponent = r.denom().bits() - 1;
        Ok(Dyadic::new(r.numer().clone(), exponent))
    }
}

impl From<&Dyadic> for Ratio {
    fn from(d: &Dyadic) -> Ratio {
        d.to_ratio()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_ratio().cmp(&other.to_ratio())
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^-{}", self.mantissa, self.exponent)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Ratio {
        s.parse().unwrap()
    }

    #[test]
    fn lowest_terms_and_display() {
        assert_eq!(Ratio::new(6, 8).to_string(), "3/4");
        assert_eq!(Ratio::one().to_string(), "1/1");
        assert_eq!(Ratio::zero().to_string(), "0/1");
        assert_eq!(r("10/4"), Ratio::new(5, 2));
        assert!("1/0".parse::<Ratio>().is_err());
        assert!("-1/2".parse::<Ratio>().is_err());
    }

    #[test]
    fn checked_and_saturating_sub() {
        assert_eq!(r("1/2").checked_sub(&r("3/4")), None);
        assert_eq!(r("3/4").checked_sub(&r("1/2")), Some(r("1/4")));
        assert_eq!(r("1/2").saturating_sub(&r("3/4")), Ratio::zero());
    }

    #[test]
    #[should_panic]
    fn sub_underflow_panics() {
        let _ = r("1/4") - r("1/2");
    }

    #[test]
    fn div_or_zero_follows_zero_over_zero_convention() {
        assert_eq!(Ratio::zero().div_or_zero(&Ratio::zero()), Ratio::zero());
        assert_eq!(r("1/4").div_or_zero(&r("1/2")), r("1/2"));
    }

    #[test]
    fn dyadic_canonical_form() {
        let d = Dyadic::new(BigUint::from(12u32), 5);
        assert_eq!(d.mantissa(), &BigUint::from(3u32));
        assert_eq!(d.exponent(), 3);
        assert_eq!(d.to_string(), "3*2^-3");
        assert_eq!(d.to_ratio(), r("3/8"));
        assert_eq!(Dyadic::zero().to_string(), "0*2^-0");
        assert!(Dyadic::try_from(&r("2/3")).is_err());
        assert_eq!(Dyadic::try_from(&r("3/8")).unwrap(), d);
        assert_eq!(d.set_digits(), vec![2, 3]);
        assert_eq!(
            Dyadic::try_from(&Ratio::one()).unwrap().set_digits(),
            vec![0]
        );
    }

    #[test]
    fn floor_dyadic_rounds_down() {
        let d = r("2/3").floor_dyadic(4);
        assert_eq!(d.to_ratio(), r("10/16"));
    }

    #[test]
    fn log2_rendering() {
        assert_eq!(format_log2(&Ratio::one(), 9), "0.000000000");
        assert_eq!(format_log2(&Ratio::zero(), 9), "-inf");
        assert_eq!(format_log2(&r("9/4"), 9), "1.169925001");
        assert_eq!(format_log2(&Ratio::pow2_neg(70), 3), "-70.000");
    }

    fn arb_ratio() -> impl Strategy<Value = Ratio> {
        (0u64..10_000, 1u64..10_000).prop_map(|(n, d)| Ratio::new(n, d))
    }

    proptest! {
        #[test]
        fn add_sub_round_trip(a in arb_ratio(), b in arb_ratio()) {
            prop_assert_eq!((&a + &b) - &b, a);
        }

        #[test]
        fn mul_div_round_trip(a in arb_ratio(), b in arb_ratio()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b) / &b, a);
        }

        #[test]
        fn dyadic_embeds_losslessly(m in 0u64..1_000_000, e in 0u64..40) {
            let d = Dyadic::new(BigUint::from(m), e);
            let back = Dyadic::try_from(&d.to_ratio()).unwrap();
            prop_assert_eq!(back, d);
        }
    }
}
