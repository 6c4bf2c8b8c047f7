//! Exact rational scalars and their text form.
//!
//! Every quantity a step weight touches (breakpoints, values, integrals,
//! ratios) is a [`Rational`], so comparisons carry no float noise.  The text
//! form accepted everywhere is either `"p/q"` or a plain decimal such as
//! `"0.25"` or `"-3"`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; the scalar type of the exact half of the crate.
pub type Rational = BigRational;

/// Shorthand constructor used pervasively in tests and generators.
///
/// Panics on a zero denominator, mirroring integer division.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn pow10(digits: usize) -> BigInt {
    let mut acc = BigInt::one();
    let ten = BigInt::from(10);
    for _ in 0..digits {
        acc *= &ten;
    }
    acc
}

/// Parse `"p/q"`, `"-3"`, or `"0.25"` into an exact rational.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let s = input.trim();
    let err = || Error::ParseRational {
        input: input.to_string(),
    };
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int_part.starts_with('-');
        let int_digits = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int_part).map_err(|_| err())?
        };
        let frac_digits = BigInt::from_str(frac_part).map_err(|_| err())?;
        let scale = pow10(frac_part.len());
        let magnitude = int_digits.abs() * &scale + frac_digits;
        let signed = if negative { -magnitude } else { magnitude };
        return Ok(Rational::new(signed, scale));
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|_| err())
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest binary64 value (lossy; used only on the floating side).
pub fn to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// The exact rational equal to a finite binary64 value.
pub fn from_f64_exact(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or(Error::NonFiniteFloat { value: x })
}

/// `(numerator, denominator)` as machine integers when both fit; lets hot
/// exact-comparison loops drop to integer cross-multiplication.
pub fn as_i128_pair(r: &Rational) -> Option<(i128, i128)> {
    use num_traits::ToPrimitive;
    Some((r.numer().to_i128()?, r.denom().to_i128()?))
}
