//! Scalar fields used by the linear algebra, LP and synthesis code.
//!
//! Two instances exist: [`Rational`] for exact verdicts and `f64` for the
//! matrix-algebra path. Every zero test goes through [`Field::is_negligible`],
//! which is exact for rationals and tolerance-based for floats.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num::bigint::BigInt;
use num::traits::{Num, Signed, ToPrimitive};
use num::BigRational;

pub type Rational = BigRational;

/// Absolute threshold below which an `f64` is treated as zero by pivoting
/// and LP code.
pub const FLOAT_EPS: f64 = 1e-10;

pub trait Field: Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// Whether arithmetic on this field is exact.
    const EXACT: bool;

    fn is_negligible(&self) -> bool;

    fn from_f64(x: f64) -> Self;

    fn as_f64(&self) -> f64;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Sign with the negligible band mapped to `Equal`.
    fn sign(&self) -> Ordering {
        if self.is_negligible() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_negligible()
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }
}

impl Field for f64 {
    const EXACT: bool = false;

    fn is_negligible(&self) -> bool {
        self.abs() <= FLOAT_EPS
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn is_negligible(&self) -> bool {
        num::Zero::is_zero(self)
    }

    /// Exact conversion of the binary64 value.
    fn from_f64(x: f64) -> Self {
        <BigRational as num::FromPrimitive>::from_f64(x).expect("finite float")
    }

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }
}

/// Shorthand for `numer/denom` as a [`Rational`].
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::from_ratio(numer, denom)
}

/// Parses `"p/q"`, `"p"` or a decimal literal such as `"0.25"` exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Ok(r) = text.parse::<BigRational>() {
        if !num::Zero::is_zero(r.denom()) {
            return Some(r);
        }
        return None;
    }
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.')?;
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::parse_bytes(digits.as_bytes(), 10)?;
    let denom = num::pow(BigInt::from(10), frac_part.len());
    Some(BigRational::new(numer * sign, denom))
}

/// Canonical text form of a rational (`"p/q"`, or `"p"` for integers).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/2"), Some(rat(1, 2)));
        assert_eq!(parse_rational("0.25"), Some(rat(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("3"), Some(rat(3, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn float_sign_band() {
        assert_eq!(1e-12_f64.sign(), Ordering::Equal);
        assert_eq!((-1e-3_f64).sign(), Ordering::Less);
        assert_eq!(rat(1, 1_000_000_000).sign(), Ordering::Greater);
    }

    #[test]
    fn rational_text_round_trip() {
        for r in [rat(2, 3), rat(-7, 5), rat(4, 1), rat(0, 1)] {
            assert_eq!(parse_rational(&format_rational(&r)), Some(r));
        }
    }
}
