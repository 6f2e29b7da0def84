use std::fmt;
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Arithmetic needed by the elimination routines.
///
/// Elements carry whatever context they need (the cyclotomic order, the
/// modulus), so `zero_like`/`one_like` build constants in the same field
/// as `self`.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out *= rhs;
        out
    }
}

impl Field for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn zero_like(&self) -> Self {
        Rational::zero()
    }

    fn one_like(&self) -> Self {
        Rational::one()
    }

    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"a/b"` or `"a"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    s.trim().parse::<Rational>().ok()
}

/// Renders as `"a/b"`, or `"a"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Converts an integral rational to `i64`, `None` when not integral or too large.
pub fn rational_to_i64(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.to_integer()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip_string() {
        let r = rat_frac(-6, 4);
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(parse_rational("-3/2"), Some(r));
        assert_eq!(parse_rational("7"), Some(rat(7)));
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn integral_conversion() {
        assert_eq!(rational_to_i64(&rat(12)), Some(12));
        assert_eq!(rational_to_i64(&rat_frac(1, 2)), None);
    }
}
