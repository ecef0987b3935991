//! Enveloping Taylor polynomials with directed rational coefficients.
//!
//! The Taylor series of the Mills ratio at zero has coefficient
//! `sqrt(2*pi)/(2 k!!)` at even `k` and `-1/k!!` at odd `k`, and the series
//! is enveloping: consecutive partial sums bracket the function. Replacing
//! `sqrt(2*pi)` by a directed rational bracket keeps the sandwich
//! `T_{n,l}(x) <= T_n(x) < f(x) < T_{n+1}(x) <= T_{n+1,u}(x)` valid while
//! making every coefficient rational.

use crate::constants::{constant_enclosure, ConstantId};
use crate::enclosure::Enclosure;
use crate::convergents::double_factorial;
use crate::polynomial::Polynomial;
use crate::rational::Rational;

/// A certified polynomial sandwich of `f` on `[0, 1]`.
///
/// `lower` is the odd-order Taylor polynomial with the low bracket of
/// `sqrt(2*pi)` in its (positive) even-degree coefficients; `upper` is the
/// next even-order polynomial with the high bracket.
#[derive(Debug, Clone)]
pub struct TaylorEnvelope {
    pub order: usize,
    pub lower: Polynomial,
    pub upper: Polynomial,
    pub constant_precision: u32,
}

/// Coefficient of `x^k` in `T_n` with `sqrt(2*pi)` replaced by `half`
/// (callers pass half the bracket endpoint, since the constant only enters
/// as `sqrt(2*pi)/2`).
fn taylor_coeff(k: usize, sqrt_2pi: &Rational) -> Rational {
    let dfac = Rational::from_integer(double_factorial(k as i64));
    if k.is_multiple_of(2) {
        sqrt_2pi / (Rational::from_integer(2.into()) * dfac)
    } else {
        -dfac.recip()
    }
}

/// Taylor polynomial of order `n` with the symbol replaced by `sqrt_2pi`.
pub fn taylor_polynomial(n: usize, sqrt_2pi: &Rational) -> Polynomial {
    Polynomial::new((0..=n).map(|k| taylor_coeff(k, sqrt_2pi)).collect())
}

/// The envelope `(T_{order,l}, T_{order+1,u})` using an explicit bracket of
/// `sqrt(2*pi)`. `order` must be odd so the lower member under-shoots.
pub fn taylor_envelope_with_bracket(order: usize, bracket: &Enclosure) -> TaylorEnvelope {
    assert!(order % 2 == 1, "lower member must have odd order");
    TaylorEnvelope {
        order,
        lower: taylor_polynomial(order, bracket.lo()),
        upper: taylor_polynomial(order + 1, bracket.hi()),
        constant_precision: 0,
    }
}

/// The envelope with the `sqrt(2*pi)` bracket taken at `constant_precision`
/// decimal digits (precision 1 reproduces the classical fractions
/// `5/2 < sqrt(2*pi) < 188/75`).
pub fn taylor_envelope(order: usize, constant_precision: u32) -> TaylorEnvelope {
    let bracket = constant_enclosure(ConstantId::Sqrt2Pi, constant_precision);
    let mut env = taylor_envelope_with_bracket(order, &bracket);
    env.constant_precision = constant_precision;
    env
}

impl TaylorEnvelope {
    /// Enclosure of `f(x)` from this envelope; only certified on `[0, 1]`.
    pub fn enclose(&self, x: &Rational) -> Enclosure {
        Enclosure::new(self.lower.eval(x), self.upper.eval(x))
            .expect("envelope members are ordered on [0, 1]")
    }
}
