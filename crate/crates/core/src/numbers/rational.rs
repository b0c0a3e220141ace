//! Exact rationals over `i128`.
//!
//! Every operation reduces to lowest terms and checks for overflow. An
//! overflow panics instead of wrapping, since a silently wrong fraction would
//! invalidate any bound derived from it. The magnitudes reached by the
//! solvers (denominators around `2^40 * 10^5`) are far from the limit.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{KroneckerError, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(Ratio<i128>);

const OVERFLOW: &str = "rational arithmetic overflow";

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Builds `numer / denom` in lowest terms. Panics if `denom == 0`.
    pub fn new(numer: i128, denom: i128) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(Ratio::new(numer, denom))
    }

    pub fn try_new(numer: i128, denom: i128) -> Result<Self> {
        if denom == 0 {
            return Err(KroneckerError::Parse(format!("{numer}/{denom}")));
        }
        Ok(Rational(Ratio::new(numer, denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(Ratio::from_integer(n as i128))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> i128 {
        self.0.floor().to_integer()
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> i128 {
        self.0.ceil().to_integer()
    }

    /// Nearest integer, ties toward positive infinity.
    pub fn round_half_up(&self) -> i128 {
        (*self + Rational::new(1, 2)).floor()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// `floor(x * 2^bits) / 2^bits`, a lower dyadic approximation of `x`.
    pub fn from_f64_floor(x: f64, bits: u32) -> Self {
        Self::from_scaled_f64(x, bits, f64::floor)
    }

    /// `ceil(x * 2^bits) / 2^bits`, an upper dyadic approximation of `x`.
    pub fn from_f64_ceil(x: f64, bits: u32) -> Self {
        Self::from_scaled_f64(x, bits, f64::ceil)
    }

    fn from_scaled_f64(x: f64, bits: u32, op: fn(f64) -> f64) -> Self {
        assert!(x.is_finite(), "non-finite float");
        assert!(bits <= 100);
        let scaled = op(x * 2f64.powi(bits as i32));
        assert!(scaled.abs() < 2f64.powi(120), "float out of range");
        Rational::new(scaled as i128, 1i128 << bits)
    }

    /// Parses `p/q`, an integer, or a decimal such as `0.25` or `1e-4`,
    /// exactly.
    pub fn parse(s: &str) -> Result<Self> {
        let err = || KroneckerError::Parse(s.to_string());
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: i128 = p.trim().parse().map_err(|_| err())?;
            let q: i128 = q.trim().parse().map_err(|_| err())?;
            return Rational::try_new(p, q);
        }
        let (mantissa, exponent) = match t.find(['e', 'E']) {
            Some(i) => {
                let e: i32 = t[i + 1..].parse().map_err(|_| err())?;
                (&t[..i], e)
            }
            None => (t, 0),
        };
        let (negative, digits) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let all: String = format!("{int_part}{frac_part}");
        let mut numer: i128 = all.parse().map_err(|_| err())?;
        if negative {
            numer = -numer;
        }
        let shift = exponent - frac_part.len() as i32;
        if shift.unsigned_abs() > 36 {
            return Err(err());
        }
        let pow = 10i128.pow(shift.unsigned_abs());
        if shift >= 0 {
            numer.checked_mul(pow).map(|n| Rational::new(n, 1)).ok_or_else(err)
        } else {
            Ok(Rational::new(numer, pow))
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        self.0.checked_add(&rhs.0).map(Rational)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        self.0.checked_mul(&rhs.0).map(Rational)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = KroneckerError;

    fn from_str(s: &str) -> Result<Self> {
        Rational::parse(s)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Rational::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$checked(&rhs.0).expect(OVERFLOW))
            }
        }

        impl $trait<i64> for Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: i64) -> Rational {
                self.$method(Rational::from_int(rhs))
            }
        }

        impl $trait<Rational> for i64 {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: Rational) -> Rational {
                Rational::from_int(self).$method(rhs)
            }
        }
    };
}

checked_binop!(Add, add, checked_add);
checked_binop!(Sub, sub, checked_sub);
checked_binop!(Mul, mul, checked_mul);

impl Div for Rational {
    type Output = Rational;
    #[inline]
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0.checked_div(&rhs.0).expect(OVERFLOW))
    }
}

impl Div<i64> for Rational {
    type Output = Rational;
    #[inline]
    fn div(self, rhs: i64) -> Rational {
        self / Rational::from_int(rhs)
    }
}

impl Div<Rational> for i64 {
    type Output = Rational;
    #[inline]
    fn div(self, rhs: Rational) -> Rational {
        Rational::from_int(self) / rhs
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = *self + rhs;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        *self = *self - rhs;
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        *self == Rational::from_int(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rational::from_int(*other)))
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |a, b| a + b)
    }
}

/// Shorthand for `Rational::new(p, q)`.
pub fn q(p: i128, d: i128) -> Rational {
    Rational::new(p, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_sign_and_gcd() {
        let a = Rational::new(6, -8);
        assert_eq!(a.numer(), -3);
        assert_eq!(a.denom(), 4);
        assert_eq!(a.to_string(), "-3/4");
        assert_eq!(Rational::from_int(2).to_string(), "2/1");
    }

    #[test]
    fn arithmetic_is_exact() {
        let third = q(1, 3);
        assert_eq!(third + third + third, Rational::ONE);
        assert_eq!(q(5, 18) * q(13, 9), q(65, 162));
        assert_eq!(q(1, 2) - q(1, 6) * 3, Rational::ZERO);
        assert_eq!(q(3, 4) / q(3, 8), Rational::from_int(2));
        assert!(q(1, 4) < q(5, 16));
        assert_eq!(q(-7, 2).floor(), -4);
        assert_eq!(q(-7, 2).ceil(), -3);
        assert_eq!(q(-1, 2).round_half_up(), 0);
        assert_eq!(q(5, 2).round_half_up(), 3);
    }

    #[test]
    fn parses_decimal_and_fraction() {
        assert_eq!(Rational::parse("1e-4").unwrap(), q(1, 10_000));
        assert_eq!(Rational::parse("0.25").unwrap(), q(1, 4));
        assert_eq!(Rational::parse("-2.5E1").unwrap(), Rational::from_int(-25));
        assert_eq!(Rational::parse(" 65/162 ").unwrap(), q(65, 162));
        assert_eq!(Rational::parse("3").unwrap(), Rational::from_int(3));
        assert_eq!(Rational::parse(".5").unwrap(), q(1, 2));
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("abc").is_err());
        assert!(Rational::parse("").is_err());
        assert!(Rational::parse("1.2.3").is_err());
    }

    #[test]
    fn dyadic_rounding_brackets_the_float() {
        let x = 0.1f64;
        let lo = Rational::from_f64_floor(x, 60);
        let hi = Rational::from_f64_ceil(x, 60);
        assert!(lo <= hi);
        assert!(lo.to_f64() <= x && x <= hi.to_f64());
        assert!(hi - lo <= q(1, 1 << 60));
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_panics() {
        let big = Rational::new(i128::MAX / 2, 1);
        let _ = big * big;
    }

    #[test]
    fn serde_uses_fraction_strings() {
        let s = serde_json::to_string(&q(5, 18)).unwrap();
        assert_eq!(s, "\"5/18\"");
        let back: Rational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q(5, 18));
    }
}
