//! Exact rational scalars.
//!
//! Everything on the certification path is a `Rational`: an
//! arbitrary-precision fraction kept in lowest terms with a positive
//! denominator. Decimal strings are parsed as exact fractions; no binary
//! float ever enters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

/// The universal exact scalar: arbitrary-precision `p/q` in lowest terms.
pub type Rational = BigRational;

/// Shorthand for a small rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for a small integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `10^(-p)` as an exact rational.
pub fn ten_pow_neg(p: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u32).pow(p))
}

/// `10^p` as an exact big integer.
pub fn ten_pow(p: u32) -> BigInt {
    BigInt::from(10u32).pow(p)
}

/// Error raised when a numeric string cannot be read as an exact rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl std::fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "cannot parse `{}` as an exact rational", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `p/q`, integers, finite decimals and scientific notation as exact
/// rationals. `1e-9` maps to exactly `1/10^9`, `0.45` to `9/20`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    let err = || ParseRationalError(s.to_string());
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
    // split an exponent part off first: 1.5e-3, 2E4
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e = i32::from_str(&s[i + 1..]).map_err(|_| err())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let negative = int_part.starts_with('-');
    let digits: String = int_part
        .trim_start_matches(['-', '+'])
        .chars()
        .chain(frac_part.chars())
        .collect();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let mut value = Rational::new(
        BigInt::from_str(&digits).map_err(|_| err())?,
        BigInt::from(10u32).pow(frac_part.len() as u32),
    );
    if negative {
        value = -value;
    }
    let scale = exp.unsigned_abs();
    if scale > 100_000 {
        return Err(err());
    }
    let p = BigInt::from(10u32).pow(scale);
    if exp >= 0 {
        value *= Rational::from_integer(p);
    } else {
        value /= Rational::from_integer(p);
    }
    Ok(value)
}

/// Renders a rational as a decimal string with `digits` fractional digits,
/// truncated toward zero. Display-side only; lossy by contract.
pub fn to_decimal_string(x: &Rational, digits: u32) -> String {
    let sign = if x.is_negative() { "-" } else { "" };
    let ax = x.abs();
    let scaled = (&ax * Rational::from_integer(ten_pow(digits))).trunc();
    let scaled = scaled.to_integer();
    let base = ten_pow(digits);
    let int_part = &scaled / &base;
    let frac_part = &scaled % &base;
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    let frac_str = format!("{:0>width$}", frac_part.to_string(), width = digits as usize);
    format!("{sign}{int_part}.{frac_str}")
}

/// Best-effort conversion to `f64` for display and cross-checks.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
