//! Arbitrary-precision rational numbers and their canonical string form.
//!
//! Every coordinate and slope in this crate is a [`Rational`]. Values are
//! always stored in lowest terms with a positive denominator; across any
//! serialization boundary they travel as lowest-terms `"p/q"` strings
//! (never decimals).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number: arbitrary-precision numerator over a positive
/// arbitrary-precision denominator, kept in lowest terms by construction.
pub type Rational = BigRational;

/// Builds a rational from small integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The rational zero.
pub fn zero() -> Rational {
    Rational::zero()
}

/// The rational one.
pub fn one() -> Rational {
    Rational::one()
}

/// Canonical string form `"p/q"`, lowest terms, `q > 0`.
///
/// Integers are rendered with an explicit denominator (`"0/1"`, `"1/1"`) so
/// that serialized output has exactly one spelling per value.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`, reducing to lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num_str
        .trim()
        .parse()
        .map_err(|_| ParseRationalError::BadInteger(num_str.to_string()))?;
    let den: BigInt = den_str
        .trim()
        .parse()
        .map_err(|_| ParseRationalError::BadInteger(den_str.to_string()))?;
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator);
    }
    Ok(BigRational::new(num, den))
}

/// Error from [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer part `{0}` in rational literal")]
    BadInteger(String),
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
}

/// True iff `x` lies in the closed unit interval.
pub fn in_unit_interval(x: &Rational) -> bool {
    !x.is_negative() && *x <= one()
}

/// Serde adapter serializing a [`Rational`] as a `"p/q"` string.
pub mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0/1", "1/1", "7/16", "-3/4", "21/32"] {
            let x = parse_rational(s).unwrap();
            assert_eq!(format_rational(&x), s);
        }
    }

    #[test]
    fn parse_reduces_to_lowest_terms() {
        assert_eq!(format_rational(&parse_rational("4/8").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("-2/-4").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("3/-4").unwrap()), "-3/4");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7/1");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1.5").is_err());
    }
}
