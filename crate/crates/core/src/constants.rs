//! Directed rational brackets of the irrational constants, and enclosure
//! versions of sqrt and exp.
//!
//! The coarse brackets are the exact continued-fraction convergent pairs
//! used throughout the classical literature on this function:
//! `5/2 < sqrt(2*pi) < 188/75`, `333/106 < pi < 355/113` and
//! `851/679 < sqrt(pi/2) < 94/75`. They are hardcoded so downstream
//! certificate polynomials reproduce those fractions digit for digit.
//! Finer brackets come from exact series/integer-sqrt computations:
//!
//! * pi via the Machin formula `pi = 16*atan(1/5) - 4*atan(1/239)`, each
//!   arctangent enclosed by consecutive partial sums of its alternating
//!   series (an enveloping series, so the bracket is rigorous);
//! * square roots of rationals via a scaled integer square root with
//!   outward rounding;
//! * exp via the alternating series for nonpositive arguments and the
//!   outward reciprocal `e^x = 1/e^(-x)` for positive ones.
//!
//! Brackets at increasing precision are intersected with the coarser ones,
//! so tightening is monotone by construction.

use crate::enclosure::Enclosure;
use crate::rational::{rat, rat_int, ten_pow, ten_pow_neg, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

/// The closed set of irrational constants the formulas need.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstantId {
    Pi,
    Sqrt2Pi,
    SqrtPiOver2,
    PiSquared,
}

impl ConstantId {
    pub const ALL: [ConstantId; 4] = [
        ConstantId::Pi,
        ConstantId::Sqrt2Pi,
        ConstantId::SqrtPiOver2,
        ConstantId::PiSquared,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstantId::Pi => "pi",
            ConstantId::Sqrt2Pi => "sqrt(2*pi)",
            ConstantId::SqrtPiOver2 => "sqrt(pi/2)",
            ConstantId::PiSquared => "pi^2",
        }
    }
}

/// Domain error for the enclosure operations in this module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumericError {
    NegativeSqrt,
    ZeroPrecision,
}

impl std::fmt::Display for NumericError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NumericError::NegativeSqrt => write!(f, "square root of a negative rational"),
            NumericError::ZeroPrecision => write!(f, "precision must be at least 1"),
        }
    }
}

impl std::error::Error for NumericError {}

/// The paper-exact coarse bracket of a constant.
pub fn coarse_bracket(c: ConstantId) -> Enclosure {
    match c {
        ConstantId::Pi => Enclosure::new(rat(333, 106), rat(355, 113)).unwrap(),
        ConstantId::Sqrt2Pi => Enclosure::new(rat(5, 2), rat(188, 75)).unwrap(),
        ConstantId::SqrtPiOver2 => Enclosure::new(rat(851, 679), rat(94, 75)).unwrap(),
        // the pi bracket squared, matching how pi^2 is replaced in proofs
        ConstantId::PiSquared => {
            Enclosure::new(rat(333 * 333, 106 * 106), rat(355 * 355, 113 * 113)).unwrap()
        }
    }
}

/// Largest `p` for which the coarse bracket already has width <= 10^(-p).
fn coarse_precision_limit(c: ConstantId) -> u32 {
    let w = coarse_bracket(c).width();
    let mut p = 0;
    while w <= ten_pow_neg(p + 1) && p < 64 {
        p += 1;
    }
    p
}

/// Floor of the integer square root, i.e. `isqrt(n)^2 <= n < (isqrt(n)+1)^2`.
fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// Enclosure of `sqrt(x)` for rational `x >= 0` of width <= 10^(-precision).
///
/// Scales to an integer square root: with `x = n/d`,
/// `sqrt(x) = sqrt(n*d)/d`, and `s = isqrt(n*d*10^(2p))` gives
/// `s/(d*10^p) <= sqrt(x) <= (s+1)/(d*10^p)` with outward rounding on the
/// right only when `s*s` is not exact. Perfect squares come back as points.
pub fn sqrt_enclosure(x: &Rational, precision: u32) -> Result<Enclosure, NumericError> {
    if x.is_negative() {
        return Err(NumericError::NegativeSqrt);
    }
    if precision == 0 {
        return Err(NumericError::ZeroPrecision);
    }
    if x.is_zero() {
        return Ok(Enclosure::point(Rational::zero()));
    }
    let n = x.numer();
    let d = x.denom();
    let scale = ten_pow(precision);
    let big = n * d * &scale * &scale;
    let s = isqrt(&big);
    let denom = d * &scale;
    if &s * &s == big {
        return Ok(Enclosure::point(Rational::new(s, denom)));
    }
    let lo = Rational::new(s.clone(), denom.clone());
    let hi = Rational::new(s + BigInt::one(), denom);
    Ok(Enclosure::new(lo, hi).unwrap())
}

/// Directed square root of an enclosure of a nonnegative real.
pub fn sqrt_of_enclosure(e: &Enclosure, precision: u32) -> Result<Enclosure, NumericError> {
    let lo = sqrt_enclosure(e.lo(), precision)?;
    let hi = sqrt_enclosure(e.hi(), precision)?;
    Ok(Enclosure::new(lo.lo().clone(), hi.hi().clone()).unwrap())
}

/// Enclosure of `atan(1/k)` for integer `k >= 2` by consecutive partial sums
/// of the alternating series `sum (-1)^j / ((2j+1) k^(2j+1))`.
fn atan_inv_enclosure(k: i64, target_width: &Rational) -> Enclosure {
    let kk = rat_int(k * k);
    let mut term = rat(1, k); // magnitude of term j
    let mut sum = Rational::zero();
    let mut j: u64 = 0;
    loop {
        let contrib = &term / rat_int(2 * j as i64 + 1);
        if j.is_multiple_of(2) {
            sum += &contrib;
            // after adding a positive term the partial sum is an upper bound
            let next = (&term / &kk).clone();
            let next_contrib = &next / rat_int(2 * j as i64 + 3);
            if next_contrib <= *target_width {
                return Enclosure::new(&sum - &next_contrib, sum).unwrap();
            }
        } else {
            sum -= &contrib;
            let next = (&term / &kk).clone();
            let next_contrib = &next / rat_int(2 * j as i64 + 3);
            if next_contrib <= *target_width {
                return Enclosure::new(sum.clone(), &sum + &next_contrib).unwrap();
            }
        }
        term = &term / &kk;
        j += 1;
    }
}

/// Machin-formula enclosure of pi with width <= 10^(-precision).
fn pi_machin(precision: u32) -> Enclosure {
    // pi = 16 atan(1/5) - 4 atan(1/239); split the width budget unevenly
    let budget = ten_pow_neg(precision);
    let w5 = &budget / rat_int(40);
    let w239 = &budget / rat_int(10);
    let a5 = atan_inv_enclosure(5, &w5);
    let a239 = atan_inv_enclosure(239, &w239);
    a5.scale(&rat_int(16)).sub(&a239.scale(&rat_int(4)))
}

fn computed_bracket(c: ConstantId, precision: u32) -> Enclosure {
    // derived constants use pi four digits finer, so their outward-rounded
    // squares still nest inside the pi bracket of the same precision
    match c {
        ConstantId::Pi => pi_machin(precision),
        ConstantId::Sqrt2Pi => {
            let pi = constant_enclosure(ConstantId::Pi, precision + 4);
            let two_pi = pi.scale(&rat_int(2));
            sqrt_of_enclosure(&two_pi, precision + 4).expect("2*pi is positive")
        }
        ConstantId::SqrtPiOver2 => {
            let pi = constant_enclosure(ConstantId::Pi, precision + 4);
            let half_pi = pi.scale(&rat(1, 2));
            sqrt_of_enclosure(&half_pi, precision + 4).expect("pi/2 is positive")
        }
        ConstantId::PiSquared => {
            let pi = constant_enclosure(ConstantId::Pi, precision + 2);
            pi.mul(&pi)
        }
    }
}

fn constant_cache() -> &'static Mutex<HashMap<(ConstantId, u32), Enclosure>> {
    static CACHE: OnceLock<Mutex<HashMap<(ConstantId, u32), Enclosure>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Enclosure of the named constant with width <= 10^(-precision).
///
/// At any precision the coarse bracket still satisfies, the coarse bracket
/// is returned bit-exactly. Finer brackets are intersected with the next
/// coarser one, so raising the precision never widens the result.
pub fn constant_enclosure(c: ConstantId, precision: u32) -> Enclosure {
    let precision = precision.max(1);
    let limit = coarse_precision_limit(c);
    if precision <= limit {
        return coarse_bracket(c);
    }
    if let Some(hit) = constant_cache().lock().unwrap().get(&(c, precision)) {
        return hit.clone();
    }
    let prev = if precision == limit + 1 {
        coarse_bracket(c)
    } else {
        constant_enclosure(c, precision - 1)
    };
    let fine = computed_bracket(c, precision);
    let result = fine
        .intersect(&prev)
        .expect("brackets of the same constant must intersect");
    constant_cache()
        .lock()
        .unwrap()
        .insert((c, precision), result.clone());
    result
}

/// Enclosure of `e^x` of width <= 10^(-precision).
///
/// For `x <= 0` consecutive partial sums of the exponential series envelope
/// the value once the terms decrease; for `x > 0` the result is the outward
/// reciprocal of the enclosure of `e^(-x)` at a precision raised enough to
/// absorb the magnification.
pub fn exp_enclosure(x: &Rational, precision: u32) -> Result<Enclosure, NumericError> {
    if precision == 0 {
        return Err(NumericError::ZeroPrecision);
    }
    if x.is_zero() {
        return Ok(Enclosure::point(Rational::one()));
    }
    if x.is_positive() {
        // e^x = 1/e^(-x); inner width w maps to outer width ~ w * e^(2x).
        // e^(2x) < 10^x, so precision + ceil(x) + 2 inner digits suffice;
        // the loop is a safety net.
        let neg = -x.clone();
        let target = ten_pow_neg(precision);
        let ceil_x = x.ceil().to_integer();
        let extra = if ceil_x > BigInt::from(100_000u32) {
            100_000
        } else {
            ceil_x.to_string().parse::<u32>().unwrap_or(0)
        };
        let mut p = precision + extra + 2;
        loop {
            let inner = exp_negative(&neg, p);
            let out = inner.recip().expect("e^(-x) enclosure is positive");
            if out.width() <= target {
                return Ok(out);
            }
            p += (p / 2).max(2);
        }
    }
    Ok(exp_negative(x, precision))
}

/// Core alternating-series evaluation for `x < 0`, in directed fixed-point
/// integer arithmetic.
///
/// With `|x| = u/v` and scale `S = 10^(precision+6)`, term magnitudes are
/// tracked as integer brackets `lo_k <= |x|^k/k! * S <= hi_k` via floor and
/// ceiling divisions, summed with alternating signs, and closed with the
/// alternating-series remainder (valid once `k >= |x|`). This avoids any
/// rational gcd on the way and returns endpoints with denominator `S`.
fn exp_negative(x: &Rational, precision: u32) -> Enclosure {
    debug_assert!(x.is_negative());
    let u = x.numer().abs().to_biguint().expect("absolute value");
    let v = x.denom().to_biguint().expect("positive denominator");
    let u = BigInt::from(u);
    let v = BigInt::from(v);
    // the +-1 rounding per step amplifies by up to the peak term
    // |x|^k/k! ~ e^|x|, so the guard must cover log10(e^|x|) digits
    let peak_digits = ((&u * BigInt::from(435u32)) / (&v * BigInt::from(1000u32)))
        .to_u32()
        .unwrap_or(1_000_000)
        .saturating_add(8);
    let scale = ten_pow(precision + peak_digits);
    let width_budget = ten_pow(peak_digits); // scale * 10^(-precision)
    let mut term_lo = scale.clone();
    let mut term_hi = scale.clone();
    let mut sum_lo = scale.clone();
    let mut sum_hi = scale.clone();
    let mut k = BigInt::one();
    loop {
        // term_{k} = term_{k-1} * u / (v * k), floor and ceiling
        let den = &v * &k;
        term_lo = (&term_lo * &u).div_floor(&den);
        term_hi = (&term_hi * &u + (&den - BigInt::one())).div_floor(&den);
        let odd = k.is_odd();
        if odd {
            sum_lo -= &term_hi;
            sum_hi -= &term_lo;
        } else {
            sum_lo += &term_lo;
            sum_hi += &term_hi;
        }
        // once k*v >= u the magnitudes decrease and the remainder after
        // term k has the sign of term k+1 and is no larger in magnitude
        if den >= u {
            let next_den = &v * (&k + BigInt::one());
            let next_hi = (&term_hi * &u + (&next_den - BigInt::one())).div_floor(&next_den);
            let width = &sum_hi - &sum_lo + &next_hi;
            if width <= width_budget {
                let (lo, hi) = if odd {
                    // next term is positive: the limit lies above the sum
                    (sum_lo, sum_hi + next_hi)
                } else {
                    (sum_lo - next_hi, sum_hi)
                };
                return Enclosure::new(
                    Rational::new(lo, scale.clone()),
                    Rational::new(hi, scale),
                )
                .unwrap();
            }
        }
        k += BigInt::one();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    #[test]
    fn coarse_brackets_are_paper_exact() {
        let pi = constant_enclosure(ConstantId::Pi, 1);
        assert_eq!(pi.lo(), &rat(333, 106));
        assert_eq!(pi.hi(), &rat(355, 113));
        let s2pi = constant_enclosure(ConstantId::Sqrt2Pi, 1);
        assert_eq!(s2pi.lo(), &rat(5, 2));
        assert_eq!(s2pi.hi(), &rat(188, 75));
        let spi2 = constant_enclosure(ConstantId::SqrtPiOver2, 1);
        assert_eq!(spi2.lo(), &rat(851, 679));
        assert_eq!(spi2.hi(), &rat(94, 75));
    }

    #[test]
    fn pi_to_twenty_digits() {
        // independent high-precision source, used once as a cross-check
        let reference = parse_rational("3.14159265358979323846264338327950288420").unwrap();
        let enc = constant_enclosure(ConstantId::Pi, 20);
        assert!(enc.width() <= ten_pow_neg(20));
        assert!(enc.contains(&reference));
    }

    #[test]
    fn sqrt_two_pi_matches_reference() {
        let reference = parse_rational("2.50662827463100050241576528481104525").unwrap();
        let enc = constant_enclosure(ConstantId::Sqrt2Pi, 25);
        assert!(enc.width() <= ten_pow_neg(25));
        assert!(enc.contains(&reference));
    }

    #[test]
    fn sqrt_enclosure_basics() {
        assert_eq!(
            sqrt_enclosure(&Rational::zero(), 5).unwrap(),
            Enclosure::point(Rational::zero())
        );
        let four = sqrt_enclosure(&rat_int(4), 10).unwrap();
        assert_eq!(four, Enclosure::point(rat_int(2)));
        let two = sqrt_enclosure(&rat_int(2), 10).unwrap();
        assert!(two.width() <= ten_pow_neg(10));
        let reference = parse_rational("1.41421356237309504880").unwrap();
        assert!(two.contains(&reference));
        assert!(sqrt_enclosure(&rat_int(-1), 5).is_err());
    }

    #[test]
    fn sqrt_squares_back() {
        for (n, d) in [(2i64, 1i64), (3, 7), (22, 7), (1, 3), (99, 100)] {
            let x = rat(n, d);
            let e = sqrt_enclosure(&x, 12).unwrap();
            assert!(e.lo() * e.lo() <= x && x <= e.hi() * e.hi());
        }
    }

    #[test]
    fn exp_enclosure_basics() {
        assert_eq!(
            exp_enclosure(&Rational::zero(), 5).unwrap(),
            Enclosure::point(Rational::one())
        );
        let em1 = exp_enclosure(&rat_int(-1), 10).unwrap();
        let reference = parse_rational("0.36787944117144232160").unwrap();
        assert!(em1.width() <= ten_pow_neg(10));
        assert!(em1.contains(&reference));
        let e1 = exp_enclosure(&rat_int(1), 10).unwrap();
        let reference = parse_rational("2.71828182845904523536").unwrap();
        assert!(e1.width() <= ten_pow_neg(10));
        assert!(e1.contains(&reference));
    }

    #[test]
    fn exp_large_negative_argument() {
        // e^(-50) = 1.92874984...e-22, far below the width target, so only
        // containment and the width contract are checkable here
        let e = exp_enclosure(&rat_int(-50), 12).unwrap();
        assert!(e.width() <= ten_pow_neg(12));
        let reference = parse_rational("1.9287498479639177830173e-22").unwrap();
        assert!(e.contains(&reference));
    }

    #[test]
    fn tightening_is_monotone() {
        for c in ConstantId::ALL {
            for p in [1u32, 3, 6, 10, 15] {
                let coarse = constant_enclosure(c, p);
                let fine = constant_enclosure(c, p + 5);
                assert!(
                    fine.width() <= coarse.width(),
                    "{:?} widened from p={} to p={}",
                    c,
                    p,
                    p + 5
                );
                assert!(fine.subset_of(&coarse));
            }
        }
    }

    #[test]
    fn sqrt_2pi_squares_into_two_pi_bracket() {
        // at computed precisions the squared bracket nests inside the
        // outward product bracket of 2*pi at the same precision
        for p in [4u32, 8, 12] {
            let s = constant_enclosure(ConstantId::Sqrt2Pi, p);
            let two_pi = constant_enclosure(ConstantId::Pi, p).scale(&rat_int(2));
            assert!(s.mul(&s).subset_of(&two_pi), "not nested at p={p}");
        }
        // the coarse fractions are independent convergent pairs; there the
        // two brackets are only required to be consistent
        let s = constant_enclosure(ConstantId::Sqrt2Pi, 1);
        let two_pi = constant_enclosure(ConstantId::Pi, 1).scale(&rat_int(2));
        assert!(s.mul(&s).intersect(&two_pi).is_ok());
    }
}
