//! Guaranteed enclosures of the Mills ratio, its derivatives, the Gaussian
//! Q-function and the companion function `F(x) = e^(x^2) int_x^inf e^(-t^2) dt`.
//!
//! Everything is built from two exact sandwiches: the enveloping Taylor
//! pair on `[0, 1]` and the convergent pair `Q_{2m}/P_{2m} < f < Q_{2m+1}/P_{2m+1}`
//! for positive arguments. The evaluator escalates the order geometrically
//! and intersects every pair it computes, so the strategy split affects
//! speed only, never correctness. Returned enclosures are padded slightly
//! inward of the requested width so that a true value never sits exactly on
//! an endpoint.

use crate::constants::{constant_enclosure, exp_enclosure, sqrt_enclosure, ConstantId};
use crate::convergents::pq;
use crate::enclosure::Enclosure;
use crate::rational::{rat, ten_pow_neg, Rational};
use crate::taylor::taylor_envelope;
use num_traits::{Signed, Zero};

/// A request for an enclosure of `f^(derivative_order)(x)` of width at most
/// `target_width`.
#[derive(Debug, Clone)]
pub struct MillsQuery {
    pub x: Rational,
    pub target_width: Rational,
    pub derivative_order: usize,
}

impl MillsQuery {
    pub fn value(x: Rational, target_width: Rational) -> Self {
        MillsQuery { x, target_width, derivative_order: 0 }
    }

    pub fn derivative(order: usize, x: Rational, target_width: Rational) -> Self {
        MillsQuery { x, target_width, derivative_order: order }
    }
}

/// Domain and contract errors of the oracle.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    NegativeArgument(Rational),
    NonpositiveWidth(Rational),
}

impl std::fmt::Display for OracleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleError::NegativeArgument(x) => {
                write!(f, "the Mills ratio is evaluated on [0, inf), got {x}")
            }
            OracleError::NonpositiveWidth(w) => {
                write!(f, "target width must be positive, got {w}")
            }
        }
    }
}

impl std::error::Error for OracleError {}

/// Number of decimal digits needed so `10^(-p) <= w`, clamped to `>= 1`.
fn digits_for(w: &Rational) -> u32 {
    let mut p = 1u32;
    while ten_pow_neg(p) > *w && p < 10_000 {
        p += 1;
    }
    p
}

/// Enclosure of `f(x)` of width at most `target_width`, for `x >= 0`.
pub fn mills_enclosure(x: &Rational, target_width: &Rational) -> Result<Enclosure, OracleError> {
    let q = MillsQuery::value(x.clone(), target_width.clone());
    mills_query(&q)
}

/// Enclosure of `f^(n)(x)` via `f^(n) = P_n f - Q_n` with outward rational
/// arithmetic; the inner enclosure of `f` is tightened until the scaled
/// width fits.
pub fn mills_derivative_enclosure(q: &MillsQuery) -> Result<Enclosure, OracleError> {
    mills_query(q)
}

/// Unified entry point for value and derivative queries.
pub fn mills_query(q: &MillsQuery) -> Result<Enclosure, OracleError> {
    if q.x.is_negative() {
        return Err(OracleError::NegativeArgument(q.x.clone()));
    }
    if !q.target_width.is_positive() {
        return Err(OracleError::NonpositiveWidth(q.target_width.clone()));
    }
    // reserve 2% of the width budget for the outward pad
    let pad = &q.target_width / Rational::from_integer(100.into());
    let inner_target = &q.target_width - &pad - &pad;
    if q.derivative_order == 0 {
        return Ok(mills_value(&q.x, &inner_target).pad(&pad));
    }
    let pair = pq(q.derivative_order);
    let p_val = pair.p.eval(&q.x);
    let q_val = pair.q.eval(&q.x);
    let scale = p_val.abs().max(Rational::from_integer(1.into()));
    let f_enc = mills_value(&q.x, &(&inner_target / scale));
    Ok(f_enc.scale(&p_val).add_scalar(&-q_val).pad(&pad))
}

/// Core escalation loop producing an unpadded enclosure of `f(x)`.
fn mills_value(x: &Rational, target: &Rational) -> Enclosure {
    let one = Rational::from_integer(1.into());
    let digits = digits_for(target);
    let mut current: Option<Enclosure> = None;
    let mut order: usize = 8;
    loop {
        let mut enc = current.take();
        if *x <= one {
            let env = taylor_envelope(order | 1, digits + 2);
            let taylor = env.enclose(x);
            enc = Some(match enc {
                Some(e) => e.intersect(&taylor).expect("both contain f(x)"),
                None => taylor,
            });
        }
        if *x >= one {
            let m = order & !1; // even lower index
            let lower = {
                let pair = pq(m);
                pair.q.eval(x) / pair.p.eval(x)
            };
            let upper = {
                let pair = pq(m + 1);
                pair.q.eval(x) / pair.p.eval(x)
            };
            let conv = Enclosure::new(lower, upper).expect("convergent sandwich is ordered");
            enc = Some(match enc {
                Some(e) => e.intersect(&conv).expect("both contain f(x)"),
                None => conv,
            });
        }
        let enc = enc.expect("at least one strategy applies");
        if enc.width() <= *target {
            return enc;
        }
        current = Some(enc);
        order *= 2;
    }
}

/// Enclosure of the Gaussian density `phi(x) = e^(-x^2/2)/sqrt(2*pi)`.
/// Internal plumbing for [`q_function`].
fn gaussian_pdf_enclosure(x: &Rational, precision: u32) -> Enclosure {
    let exponent = -(x * x) / Rational::from_integer(2.into());
    let exp = exp_enclosure(&exponent, precision).expect("precision >= 1");
    let s2pi = constant_enclosure(ConstantId::Sqrt2Pi, precision);
    exp.div(&s2pi).expect("sqrt(2*pi) bracket is positive")
}

/// Enclosure of the Gaussian Q-function
/// `Q(x) = (1/sqrt(2*pi)) e^(-x^2/2) f(x)`, width at most `target_width`.
pub fn q_function(x: &Rational, target_width: &Rational) -> Result<Enclosure, OracleError> {
    if x.is_negative() {
        return Err(OracleError::NegativeArgument(x.clone()));
    }
    if !target_width.is_positive() {
        return Err(OracleError::NonpositiveWidth(target_width.clone()));
    }
    let pad = target_width / Rational::from_integer(100.into());
    let inner_target = target_width - &pad - &pad;
    let mut p = digits_for(&inner_target) + 2;
    loop {
        let pdf = gaussian_pdf_enclosure(x, p);
        let f = mills_value(x, &ten_pow_neg(p));
        let product = pdf.mul(&f);
        if product.width() <= inner_target {
            return Ok(product.pad(&pad));
        }
        p += 2;
    }
}

/// Enclosure of `F(x) = e^(x^2) int_x^inf e^(-t^2) dt` through the identity
/// `f(x) = sqrt(2) F(x/sqrt(2))`, i.e. `F(x) = f(sqrt(2) x)/sqrt(2)`.
/// The irrational argument is handled by monotonicity: `f` is strictly
/// decreasing, so `f([a, b]) = [f(b), f(a)]`.
pub fn laplace_f_enclosure(
    x: &Rational,
    target_width: &Rational,
) -> Result<Enclosure, OracleError> {
    if x.is_negative() {
        return Err(OracleError::NegativeArgument(x.clone()));
    }
    if !target_width.is_positive() {
        return Err(OracleError::NonpositiveWidth(target_width.clone()));
    }
    let pad = target_width / Rational::from_integer(100.into());
    let inner_target = target_width - &pad - &pad;
    let mut p = digits_for(&inner_target) + 1;
    loop {
        let sqrt2 = sqrt_enclosure(&Rational::from_integer(2.into()), p).expect("2 >= 0");
        let arg = sqrt2.scale(x);
        let w = ten_pow_neg(p);
        let f_hi = mills_value(arg.lo(), &w);
        let f_lo = mills_value(arg.hi(), &w);
        let f_over_arg = Enclosure::new(f_lo.lo().clone(), f_hi.hi().clone())
            .expect("f is decreasing");
        let result = f_over_arg.div(&sqrt2).expect("sqrt(2) bracket is positive");
        if result.width() <= inner_target {
            return Ok(result.pad(&pad));
        }
        p += 2;
    }
}

/// Tightens a derivative enclosure until its sign is determined, for
/// monotonicity-style checks. Returns the signed enclosure.
pub fn mills_derivative_signed(n: usize, x: &Rational) -> Result<Enclosure, OracleError> {
    let mut w = rat(1, 1_000_000);
    for _ in 0..60 {
        let enc = mills_query(&MillsQuery::derivative(n, x.clone(), w.clone()))?;
        if enc.definite_sign().is_some() && !enc.lo().is_zero() {
            return Ok(enc);
        }
        w /= Rational::from_integer(1000.into());
    }
    // sign genuinely unresolved only if the true value is zero, which the
    // complete monotonicity of f rules out for x > 0
    mills_query(&MillsQuery::derivative(n, x.clone(), w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_rational, rat_int, to_f64};

    #[test]
    fn value_at_zero_is_half_sqrt_2pi() {
        let enc = mills_enclosure(&Rational::zero(), &ten_pow_neg(12)).unwrap();
        let reference = parse_rational("1.25331413731550025120788264240552").unwrap();
        assert!(enc.contains(&reference));
        assert!(enc.width() <= ten_pow_neg(12));
    }

    #[test]
    fn value_at_one() {
        let enc = mills_enclosure(&rat_int(1), &ten_pow_neg(6)).unwrap();
        // erfc-based double-precision cross-check: f(1) = 0.65567954...
        assert!(enc.contains(&parse_rational("0.6556795424187985").unwrap()));
    }

    #[test]
    fn value_at_ten() {
        let enc = mills_enclosure(&rat_int(10), &ten_pow_neg(6)).unwrap();
        assert!(enc.contains(&parse_rational("0.09902859647173824").unwrap()));
    }

    #[test]
    fn derivative_examples_at_zero() {
        let d1 = mills_query(&MillsQuery::derivative(1, Rational::zero(), ten_pow_neg(9)))
            .unwrap();
        assert!(d1.contains(&rat_int(-1)));
        let d2 = mills_query(&MillsQuery::derivative(2, Rational::zero(), ten_pow_neg(9)))
            .unwrap();
        assert!(d2.contains(&parse_rational("1.253314137315500251").unwrap()));
    }

    #[test]
    fn third_derivative_is_negative_at_one() {
        let d3 = mills_derivative_signed(3, &rat_int(1)).unwrap();
        assert!(d3.is_strictly_negative());
    }

    #[test]
    fn q_function_values() {
        let q0 = q_function(&Rational::zero(), &ten_pow_neg(9)).unwrap();
        assert!(q0.contains(&rat(1, 2)));
        let q1 = q_function(&rat_int(1), &ten_pow_neg(9)).unwrap();
        assert!(q1.contains(&parse_rational("0.15865525393145705").unwrap()));
        let q3 = q_function(&rat_int(3), &ten_pow_neg(9)).unwrap();
        assert!(q3.contains(&parse_rational("0.0013498980316300933").unwrap()));
    }

    #[test]
    fn laplace_f_values() {
        let f0 = laplace_f_enclosure(&Rational::zero(), &ten_pow_neg(9)).unwrap();
        // F(0) = sqrt(pi)/2
        assert!(f0.contains(&parse_rational("0.88622692545275801364").unwrap()));
        // F(1) = (sqrt(pi)/2) * erfcx(1), double-precision cross-check
        let reference = 0.5 * core::f64::consts::PI.sqrt() * libm::erfc(1.0) * 1f64.exp();
        let f1 = laplace_f_enclosure(&rat_int(1), &ten_pow_neg(6)).unwrap();
        let reference = parse_rational(&format!("{reference:.15}")).unwrap();
        assert!(f1.contains(&reference), "F(1) enclosure {f1} misses {reference}");
    }

    #[test]
    fn laplace_identity_cross_check() {
        // sqrt(2) F(x/sqrt(2)) must intersect the direct enclosure of f(x)
        for x in [rat(1, 2), rat_int(1), rat(7, 3)] {
            let lhs = mills_enclosure(&x, &ten_pow_neg(9)).unwrap();
            // f(x) = sqrt(2) F(x/sqrt(2)): evaluate the right side outward
            let p = 12;
            let sqrt2 = sqrt_enclosure(&rat_int(2), p).unwrap();
            let half_arg = Enclosure::new(
                &x / sqrt2.hi(),
                &x / sqrt2.lo(),
            )
            .unwrap();
            let f_hi = laplace_f_enclosure(half_arg.lo(), &ten_pow_neg(9)).unwrap();
            let f_lo = laplace_f_enclosure(half_arg.hi(), &ten_pow_neg(9)).unwrap();
            let f_range = Enclosure::new(f_lo.lo().clone(), f_hi.hi().clone()).unwrap();
            let rhs = f_range.mul(&sqrt2);
            assert!(lhs.intersect(&rhs).is_ok(), "identity failed at x = {x}");
        }
    }

    #[test]
    fn width_contract_and_monotonicity_of_f() {
        let w = ten_pow_neg(9);
        let mut prev: Option<Enclosure> = None;
        for i in 0..=20 {
            let x = rat(i, 2);
            let enc = mills_enclosure(&x, &w).unwrap();
            assert!(enc.width() <= w, "width broken at x = {x}");
            if let Some(p) = prev {
                assert!(
                    p.lo() > enc.hi(),
                    "f must be strictly decreasing: {} then {}",
                    to_f64(p.lo()),
                    to_f64(enc.hi())
                );
            }
            prev = Some(enc);
        }
    }

    #[test]
    fn negative_argument_rejected() {
        assert!(mills_enclosure(&rat_int(-1), &ten_pow_neg(3)).is_err());
        assert!(q_function(&rat_int(-1), &ten_pow_neg(3)).is_err());
        assert!(mills_enclosure(&rat_int(1), &Rational::zero()).is_err());
    }
}
