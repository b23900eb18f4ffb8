//! Exact rational arithmetic for edge weights and accumulated distances.
//!
//! Every numeric quantity in this crate is a [`Rational`] so that the
//! equalities demanded by restriction maps are decidable. No floating point
//! appears anywhere in the pipeline; decimal input is converted exactly
//! (`"0.1"` becomes `1/10`).

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

/// Exact rational number used throughout the crate.
pub type Rational = num_rational::BigRational;

/// `numer / denom` as an exact rational.
///
/// Panics if `denom` is zero.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Whole number as an exact rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Renders `p/q`, or plain `p` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        format!("{}", value.numer())
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Failure to read a rational from text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    /// The input was empty.
    #[error("empty number")]
    Empty,
    /// The input was not an integer, `p/q`, or decimal literal.
    #[error("malformed number")]
    Malformed,
    /// A `p/q` literal with `q = 0`.
    #[error("denominator is zero")]
    ZeroDenominator,
}

/// Parses `p`, `p/q`, or a decimal literal such as `3.25` into an exact
/// rational. The sign, if any, must lead the numerator.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if let Some((numer, denom)) = text.split_once('/') {
        let numer = parse_bigint(numer)?;
        if denom.starts_with('-') {
            return Err(ParseRationalError::Malformed);
        }
        let denom = parse_bigint(denom)?;
        if denom == BigInt::from(0) {
            return Err(ParseRationalError::ZeroDenominator);
        }
        return Ok(Rational::new(numer, denom));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRationalError::Malformed);
        }
        let (sign, digits) = match whole.strip_prefix('-') {
            Some(rest) => ("-", rest),
            None => ("", whole),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRationalError::Malformed);
        }
        let numer = parse_bigint(&format!("{sign}{digits}{frac}"))?;
        let denom = BigInt::from(10).pow(frac.len() as u32);
        return Ok(Rational::new(numer, denom));
    }
    Ok(Rational::from_integer(parse_bigint(text)?))
}

fn parse_bigint(text: &str) -> Result<BigInt, ParseRationalError> {
    let unsigned = text.strip_prefix('-').unwrap_or(text);
    if unsigned.is_empty() || !unsigned.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::Malformed);
    }
    text.parse().map_err(|_| ParseRationalError::Malformed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_fractions_and_decimals() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational("3.25").unwrap(), ratio(13, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
        assert_eq!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator));
        for bad in ["abc", "1.", ".5", "1/2/3", "1e3", "1.2.3", "--4", "1/-2"] {
            assert_eq!(parse_rational(bad), Err(ParseRationalError::Malformed), "{bad}");
        }
    }

    #[test]
    fn formats_reduced_values() {
        assert_eq!(format_rational(&int(5)), "5");
        assert_eq!(format_rational(&ratio(10, 4)), "5/2");
        assert_eq!(format_rational(&ratio(4, 2)), "2");
    }

    #[test]
    fn round_trips_through_text() {
        for value in [int(0), int(12), ratio(355, 113), ratio(-7, 3)] {
            assert_eq!(parse_rational(&format_rational(&value)).unwrap(), value);
        }
    }
}
