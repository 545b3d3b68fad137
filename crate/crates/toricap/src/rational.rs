//! Exact rational scalars.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with
//! a positive denominator. The canonical text form is a decimal integer
//! string or a `"p/q"` string; nothing in the computation path ever goes
//! through floating point.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Shorthand for small rational literals, mostly in tests and examples.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or a decimal integer string.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = |detail: &str| Error::Parse(format!("bad rational literal {text:?}: {detail}"));
    if text.is_empty() {
        return Err(bad("empty string"));
    }
    match text.split_once('/') {
        Some((numer, denom)) => {
            let numer: BigInt = numer
                .trim()
                .parse()
                .map_err(|_| bad("numerator is not an integer"))?;
            let denom: BigInt = denom
                .trim()
                .parse()
                .map_err(|_| bad("denominator is not an integer"))?;
            if denom.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rational::new(numer, denom))
        }
        None => {
            let numer: BigInt = text.parse().map_err(|_| bad("not an integer"))?;
            Ok(Rational::from_integer(numer))
        }
    }
}

/// Formats in the canonical `"p"` / `"p/q"` form, q > 0 and lowest terms.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// True if `value` is a nonnegative integer.
pub fn is_nonnegative_integer(value: &Rational) -> bool {
    value.denom().is_one() && !value.numer().is_negative()
}
