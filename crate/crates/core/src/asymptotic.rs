//! The finite tail expansions `J_n`.
//!
//! `J_n(x) = 1/x - 1/x^3 + 3/x^5 - ... + (-1)^(n+1) (2n-3)!!/x^(2n-1)`
//! truncates the divergent asymptotic series of the Mills ratio; the error
//! is bounded by the first neglected term and has its sign.

use crate::convergents::double_factorial;
use crate::rational::Rational;
use num_traits::Signed;

/// One truncation: a list of `(sign, magnitude, odd power)` terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticTruncation {
    pub n: usize,
    pub terms: Vec<(i32, Rational, u32)>,
}

/// Errors from tail-expansion evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum AsymptoticError {
    NonpositiveArgument(Rational),
}

impl std::fmt::Display for AsymptoticError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AsymptoticError::NonpositiveArgument(x) => {
                write!(f, "J_n needs a positive argument, got {x}")
            }
        }
    }
}

impl std::error::Error for AsymptoticError {}

/// The truncation `J_n` as structured terms; term `k` (1-based) has
/// magnitude `(2k-3)!!`, power `2k-1` and alternating sign starting `+`.
pub fn jn(n: usize) -> AsymptoticTruncation {
    assert!(n >= 1);
    let terms = (1..=n)
        .map(|k| {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let mag = Rational::from_integer(double_factorial(2 * k as i64 - 3));
            (sign, mag, 2 * k as u32 - 1)
        })
        .collect();
    AsymptoticTruncation { n, terms }
}

/// Exact rational value of `J_n(x)` for `x > 0`.
pub fn jn_eval(n: usize, x: &Rational) -> Result<Rational, AsymptoticError> {
    if !x.is_positive() {
        return Err(AsymptoticError::NonpositiveArgument(x.clone()));
    }
    let mut acc = Rational::from_integer(0.into());
    for (sign, mag, pow) in jn(n).terms {
        let term = mag / x.pow(pow as i32);
        if sign > 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}
