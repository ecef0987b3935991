//! The convergent polynomials `P_n`, `Q_n` and their identities.
//!
//! Both families satisfy the same three-term recurrence
//! `P_n = x P_{n-1} + (n-1) P_{n-2}` with starts `P_0 = 1, P_1 = x` and
//! `Q_0 = 0, Q_1 = 1`. The fractions `Q_n/P_n` are simultaneously the
//! convergents of the continued fraction of the Mills ratio, its
//! Pade-Laurent approximants at infinity, and the coefficient pair of the
//! n-th derivative representation `f^(n) = P_n f - Q_n`.

use crate::polynomial::Polynomial;
use crate::rational::{rat_int, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::{Mutex, OnceLock};

/// The pair `(P_n, Q_n)` for one index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentPair {
    pub n: usize,
    pub p: Polynomial,
    pub q: Polynomial,
}

/// Errors from convergent evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvergentError {
    NonpositiveArgument(Rational),
    UndefinedAtZero(usize),
}

impl std::fmt::Display for ConvergentError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConvergentError::NonpositiveArgument(x) => {
                write!(f, "argument {x} must be positive")
            }
            ConvergentError::UndefinedAtZero(n) => {
                write!(f, "Q_{n}/P_{n} is undefined at 0 (P_{n}(0) = 0)")
            }
        }
    }
}

impl std::error::Error for ConvergentError {}

fn pair_cache() -> &'static Mutex<Vec<(Polynomial, Polynomial)>> {
    static CACHE: OnceLock<Mutex<Vec<(Polynomial, Polynomial)>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(vec![
            (Polynomial::one(), Polynomial::zero()),
            (Polynomial::x(), Polynomial::one()),
        ])
    })
}

/// The memoized recurrence pair `(P_n, Q_n)`.
pub fn pq(n: usize) -> ConvergentPair {
    let mut cache = pair_cache().lock().unwrap();
    while cache.len() <= n {
        let m = cache.len(); // building index m from m-1, m-2
        let factor = rat_int((m - 1) as i64);
        let p = Polynomial::x()
            .mul(&cache[m - 1].0)
            .add(&cache[m - 2].0.scale(&factor));
        let q = Polynomial::x()
            .mul(&cache[m - 1].1)
            .add(&cache[m - 2].1.scale(&factor));
        cache.push((p, q));
    }
    let (p, q) = cache[n].clone();
    ConvergentPair { n, p, q }
}

/// Closed form `P_n(x) = n! sum_k x^(n-2k) / (2^k k! (n-2k)!)`, built from
/// exact integer factorials. Equals the recurrence output coefficient for
/// coefficient.
pub fn pn_explicit(n: usize) -> Polynomial {
    let mut coeffs = vec![Rational::zero(); n + 1];
    let n_fact = factorial(n);
    for k in 0..=n / 2 {
        let denom = BigInt::from(2u32).pow(k as u32) * factorial(k) * factorial(n - 2 * k);
        coeffs[n - 2 * k] = Rational::new(n_fact.clone(), denom);
    }
    Polynomial::new(coeffs)
}

fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Double factorial `n!! = n (n-2) (n-4) ...` with `0!! = 1!! = 1` and, by
/// the usual convention, `(-1)!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    if n <= 0 {
        return BigInt::one();
    }
    let mut acc = BigInt::one();
    let mut k = n;
    while k >= 2 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

/// Checks `P_n(x) = He_n(ix)/i^n` against the monic Hermite recurrence
/// `He_n = x He_{n-1} - (n-1) He_{n-2}`. The imaginary substitution acts as
/// a sign flip on every second coefficient.
pub fn hermite_check(n: usize) -> bool {
    let mut h_prev = Polynomial::one(); // He_0
    let mut h = Polynomial::x(); // He_1
    if n == 0 {
        h = h_prev.clone();
    } else {
        for m in 2..=n {
            let next = Polynomial::x()
                .mul(&h)
                .sub(&h_prev.scale(&rat_int((m - 1) as i64)));
            h_prev = h;
            h = next;
        }
    }
    // He_n(ix)/i^n: the x^(n-2k) coefficient picks up a factor (-1)^k
    let transformed = Polynomial::new(
        h.coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let k = (n - j) / 2;
                if k % 2 == 1 {
                    -c.clone()
                } else {
                    c.clone()
                }
            })
            .collect(),
    );
    transformed == pq(n).p
}

/// Exact rational `Q_n(x)/P_n(x)`.
///
/// Defined for all `x > 0`; at `x = 0` only when `P_n(0)` is nonzero
/// (even `n`).
pub fn convergent_eval(n: usize, x: &Rational) -> Result<Rational, ConvergentError> {
    if x.is_negative() {
        return Err(ConvergentError::NonpositiveArgument(x.clone()));
    }
    let pair = pq(n);
    let pv = pair.p.eval(x);
    if pv.is_zero() {
        return Err(ConvergentError::UndefinedAtZero(n));
    }
    Ok(pair.q.eval(x) / pv)
}

/// Bottom-up evaluation of the continued fraction
/// `1/(x + 1/(x + 2/(x + 3/(x + ...))))` truncated at `depth` levels.
/// Identical to `convergent_eval(depth, x)` by the convergent property.
pub fn continued_fraction_eval(depth: usize, x: &Rational) -> Result<Rational, ConvergentError> {
    if !x.is_positive() {
        return Err(ConvergentError::NonpositiveArgument(x.clone()));
    }
    assert!(depth >= 1, "depth must be positive");
    let mut acc = Rational::zero();
    for level in (1..=depth).rev() {
        let numerator = if level == 1 {
            Rational::one()
        } else {
            rat_int((level - 1) as i64)
        };
        acc = numerator / (x + &acc);
    }
    Ok(acc)
}

/// Truncated reciprocal power series of `p` at the origin:
/// the first `len` coefficients of `1/p(y)`, requiring `p(0) != 0`.
fn series_recip(p: &Polynomial, len: usize) -> Vec<Rational> {
    let c0 = p.coeff(0);
    assert!(!c0.is_zero());
    let inv0 = c0.recip();
    let mut out = vec![Rational::zero(); len];
    out[0] = inv0.clone();
    for k in 1..len {
        // c0 * out[k] + sum_{j=1..k} p_j out[k-j] = 0
        let mut acc = Rational::zero();
        for j in 1..=k {
            let pj = p.coeff(j);
            if !pj.is_zero() {
                acc += pj * &out[k - j];
            }
        }
        out[k] = -acc * &inv0;
    }
    out
}

/// Number of leading coefficients of the Laurent expansion of `Q_n/P_n` at
/// infinity that match the signed double-factorial tail series
/// `1/x - 1/x^3 + 3/x^5 - 15/x^7 + ...`, including the structural zeros of
/// the even slots. The expansion is computed to `2n+1` terms by exact power
/// series division in the reciprocal variable. Always at least `n`.
pub fn laurent_match_order(n: usize) -> usize {
    assert!(n >= 1);
    let pair = pq(n);
    let len = 2 * n + 2;
    // reciprocal variable: x = 1/y; Q_n(x)/P_n(x) = y * Qr(y)/Pr(y) where
    // Qr, Pr reverse the coefficients (Pr(0) = 1 since P_n is monic)
    let pr = Polynomial::new(pair.p.coeffs().iter().rev().cloned().collect());
    let qr = Polynomial::new(pair.q.coeffs().iter().rev().cloned().collect());
    let inv = series_recip(&pr, len);
    // series of y * Qr * (1/Pr), coefficient of y^m
    let mut series = vec![Rational::zero(); len];
    for m in 1..len {
        let mut acc = Rational::zero();
        for j in 0..m {
            let qj = qr.coeff(j);
            if !qj.is_zero() {
                acc += qj * &inv[m - 1 - j];
            }
        }
        series[m] = acc;
    }
    // expected: slot 2k+1 holds (-1)^k (2k-1)!!, even slots are zero
    let mut matched = 0;
    for m in 1..len {
        let expected = if m % 2 == 0 {
            Rational::zero()
        } else {
            let k = (m - 1) / 2;
            let mag = Rational::from_integer(double_factorial(2 * k as i64 - 1));
            if k % 2 == 1 {
                -mag
            } else {
                mag
            }
        };
        if series[m] == expected {
            if m % 2 == 1 {
                matched += 1;
            }
        } else {
            break;
        }
    }
    matched
}

/// Wronskian-style product identity value `(-1)^(n+1) (n-1)!`.
pub fn wronskian_rhs(n: usize) -> Rational {
    let mag = Rational::from_integer(factorial(n - 1));
    if n.is_multiple_of(2) {
        -mag
    } else {
        mag
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn first_pairs_match_listing() {
        assert_eq!(pq(0).p, Polynomial::one());
        assert_eq!(pq(0).q, Polynomial::zero());
        assert_eq!(pq(2).p, Polynomial::from_ints(&[1, 0, 1]));
        assert_eq!(pq(2).q, Polynomial::from_ints(&[0, 1]));
        assert_eq!(pq(3).p, Polynomial::from_ints(&[0, 3, 0, 1]));
        assert_eq!(pq(5).p, Polynomial::from_ints(&[0, 15, 0, 10, 0, 1]));
        assert_eq!(pq(5).q, Polynomial::from_ints(&[8, 0, 9, 0, 1]));
        // the pair printed for the convexity step
        assert_eq!(
            pq(10).p,
            Polynomial::from_ints(&[945, 0, 4725, 0, 3150, 0, 630, 0, 45, 0, 1])
        );
        assert_eq!(
            pq(10).q,
            Polynomial::from_ints(&[0, 2895, 0, 2640, 0, 588, 0, 44, 0, 1])
        );
        assert_eq!(
            pq(11).p,
            Polynomial::from_ints(&[0, 10395, 0, 17325, 0, 6930, 0, 990, 0, 55, 0, 1])
        );
        assert_eq!(
            pq(11).q,
            Polynomial::from_ints(&[3840, 0, 12645, 0, 6090, 0, 938, 0, 54, 0, 1])
        );
    }

    #[test]
    fn explicit_formula_equals_recurrence() {
        assert_eq!(pn_explicit(4), Polynomial::from_ints(&[3, 0, 6, 0, 1]));
        assert_eq!(pn_explicit(1), Polynomial::x());
        for n in 0..=20 {
            assert_eq!(pn_explicit(n), pq(n).p, "mismatch at n = {n}");
        }
    }

    #[test]
    fn hermite_substitution_holds() {
        assert!(hermite_check(0));
        assert!(hermite_check(2));
        assert!(hermite_check(10));
        for n in 0..=25 {
            assert!(hermite_check(n), "failed at n = {n}");
        }
    }

    #[test]
    fn wronskian_identity() {
        for n in 1..=50 {
            let hi = pq(n);
            let lo = pq(n - 1);
            let lhs = hi.q.mul(&lo.p).sub(&lo.q.mul(&hi.p));
            assert_eq!(lhs, Polynomial::constant(wronskian_rhs(n)), "n = {n}");
        }
    }

    #[test]
    fn derivative_identity() {
        for n in 1..=50 {
            assert_eq!(pq(n).p.derivative(), pq(n - 1).p.scale(&rat_int(n as i64)));
        }
    }

    #[test]
    fn values_at_zero_and_unit_coefficient() {
        for n in (0..=50).step_by(2) {
            assert_eq!(
                pq(n).p.coeff(0),
                Rational::from_integer(double_factorial(n as i64 - 1)),
                "P_n(0) at n = {n}"
            );
        }
        for n in (1..=49).step_by(2) {
            assert_eq!(pq(n).p.coeff(0), Rational::zero());
            assert_eq!(
                pq(n).p.coeff(1),
                Rational::from_integer(double_factorial(n as i64)),
                "x-coefficient at n = {n}"
            );
        }
    }

    #[test]
    fn convergent_eval_examples() {
        assert_eq!(convergent_eval(2, &rat_int(1)).unwrap(), rat(1, 2));
        assert_eq!(convergent_eval(3, &rat_int(1)).unwrap(), rat(3, 4));
        assert_eq!(convergent_eval(1, &rat_int(2)).unwrap(), rat(1, 2));
        // odd pairs are undefined at the origin
        assert!(convergent_eval(3, &Rational::zero()).is_err());
        assert!(convergent_eval(1, &rat_int(-1)).is_err());
    }

    #[test]
    fn continued_fraction_equals_convergents() {
        assert_eq!(
            continued_fraction_eval(1, &rat_int(3)).unwrap(),
            rat(1, 3)
        );
        assert_eq!(
            continued_fraction_eval(4, &rat_int(1)).unwrap(),
            rat(3, 5)
        );
        for n in 1..=20 {
            for x in [rat(1, 3), rat(7, 2), rat_int(10), rat(9999, 1000)] {
                assert_eq!(
                    continued_fraction_eval(n, &x).unwrap(),
                    convergent_eval(n, &x).unwrap(),
                    "depth {n} at x = {x}"
                );
            }
        }
    }

    #[test]
    fn sandwich_monotonicity() {
        for x in [rat(1, 2), rat_int(1), rat(5, 2), rat_int(9)] {
            for m in 1..=10usize {
                let even_lo = convergent_eval(2 * m, &x).unwrap();
                let even_hi = convergent_eval(2 * m + 2, &x).unwrap();
                assert!(even_lo < even_hi, "even chain at m = {m}, x = {x}");
                let odd_hi = convergent_eval(2 * m - 1, &x).unwrap();
                let odd_lo = convergent_eval(2 * m + 1, &x).unwrap();
                assert!(odd_lo < odd_hi, "odd chain at m = {m}, x = {x}");
                assert!(even_lo < odd_lo, "interleaving at m = {m}, x = {x}");
            }
        }
    }

    #[test]
    fn laurent_matches_at_least_n() {
        assert!(laurent_match_order(1) >= 1);
        assert_eq!(laurent_match_order(3), 3);
        for n in 1..=8 {
            assert!(laurent_match_order(n) >= n, "n = {n}");
        }
    }
}
