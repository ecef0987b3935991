//! Sturm sequences, sign-change counting, root counting and isolation.
//!
//! The chain is built exactly as in the classical construction: `p_0 = p`,
//! `p_1 = p'`, and `p_{i-1} = q_i p_i - p_{i+1}` where `p_{i+1}` is the
//! remainder with the sign changed. Inputs with multiple roots are first
//! divided by `gcd(p, p')`. No rescaling is applied to the chain elements,
//! so the printed sequences of the reference computations are reproduced
//! verbatim.

use crate::polynomial::{PolyError, Polynomial};
use crate::rational::Rational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::fmt;

/// A rational point extended with the two infinities, for chain evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SturmPoint {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl SturmPoint {
    pub fn finite(x: Rational) -> Self {
        SturmPoint::Finite(x)
    }

    fn lt(&self, other: &SturmPoint) -> bool {
        use SturmPoint::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => false,
            (NegInf, _) => true,
            (_, PosInf) => true,
            (Finite(a), Finite(b)) => a < b,
            _ => false,
        }
    }
}

impl fmt::Display for SturmPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SturmPoint::NegInf => write!(f, "-inf"),
            SturmPoint::Finite(x) => write!(f, "{x}"),
            SturmPoint::PosInf => write!(f, "+inf"),
        }
    }
}

impl From<Rational> for SturmPoint {
    fn from(x: Rational) -> Self {
        SturmPoint::Finite(x)
    }
}

/// Errors from the root-counting operations.
#[derive(Debug, Clone, PartialEq)]
pub enum SturmError {
    ZeroPolynomial,
    EndpointIsRoot(Rational),
    EmptyInterval,
    Poly(PolyError),
}

impl fmt::Display for SturmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SturmError::ZeroPolynomial => write!(f, "zero polynomial has no Sturm sequence"),
            SturmError::EndpointIsRoot(x) => {
                write!(f, "endpoint {x} is a root; nudge the endpoint")
            }
            SturmError::EmptyInterval => write!(f, "interval endpoints out of order"),
            SturmError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SturmError {}

impl From<PolyError> for SturmError {
    fn from(e: PolyError) -> Self {
        SturmError::Poly(e)
    }
}

/// The negated-remainder chain of a (square-free reduced) polynomial.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    polys: Vec<Polynomial>,
}

/// Signs of the chain at one point together with the alternation count.
#[derive(Debug, Clone, Serialize)]
pub struct SignTable {
    pub point: String,
    pub signs: Vec<i32>,
    pub changes: usize,
}

impl SturmSequence {
    /// Builds the chain. A multiple-root input is reduced by
    /// `gcd(p, p')` first, so the last element is a nonzero constant.
    pub fn new(p: &Polynomial) -> Result<Self, SturmError> {
        Self::build(p, false)
    }

    /// Chain with every element reduced to its primitive part. Stripping
    /// the (positive) content leaves all evaluation signs unchanged, so
    /// sign-change counts agree with the raw chain while coefficient sizes
    /// stay linear in the chain depth. The counting operations use this.
    pub(crate) fn new_normalized(p: &Polynomial) -> Result<Self, SturmError> {
        Self::build(p, true)
    }

    fn build(p: &Polynomial, normalize: bool) -> Result<Self, SturmError> {
        if p.is_zero() {
            return Err(SturmError::ZeroPolynomial);
        }
        let g = p.gcd(&p.derivative()).unwrap_or_else(|_| Polynomial::one());
        let mut reduced = if g.degree().unwrap_or(0) > 0 {
            let (q, r) = p.divmod(&g)?;
            debug_assert!(r.is_zero());
            q
        } else {
            p.clone()
        };
        if normalize {
            reduced = reduced.primitive_part();
        }
        if reduced.degree() == Some(0) {
            return Ok(SturmSequence { polys: vec![reduced] });
        }
        let d = reduced.derivative();
        let d = if normalize { d.primitive_part() } else { d };
        let mut polys = vec![reduced, d];
        loop {
            let n = polys.len();
            let (_, r) = polys[n - 2].divmod(&polys[n - 1])?;
            if r.is_zero() {
                break;
            }
            let next = if normalize { r.neg().primitive_part() } else { r.neg() };
            polys.push(next);
        }
        Ok(SturmSequence { polys })
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    /// The square-free reduced polynomial the chain counts roots of.
    pub fn reduced(&self) -> &Polynomial {
        &self.polys[0]
    }

    /// Signs of the chain at `c`; at the infinities each sign is the sign
    /// of the leading coefficient (negated at -inf for odd degree). Zeros
    /// do not contribute to the number of changes.
    pub fn sign_changes(&self, c: &SturmPoint) -> SignTable {
        let signs: Vec<i32> = self
            .polys
            .iter()
            .map(|p| match c {
                SturmPoint::NegInf => p.sign_at_neg_inf(),
                SturmPoint::Finite(x) => p.sign_at(x),
                SturmPoint::PosInf => p.sign_at_pos_inf(),
            })
            .collect();
        let mut changes = 0;
        let mut last = 0;
        for &s in &signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        SignTable { point: c.to_string(), signs, changes }
    }
}

/// Number of distinct real roots of `p` in the open interval `(a, b)`.
///
/// Finite endpoints must not be roots of the square-free part.
pub fn count_roots(p: &Polynomial, a: &SturmPoint, b: &SturmPoint) -> Result<usize, SturmError> {
    let seq = SturmSequence::new_normalized(p)?;
    count_roots_with(&seq, a, b)
}

/// Same as [`count_roots`] with a prebuilt chain.
pub fn count_roots_with(
    seq: &SturmSequence,
    a: &SturmPoint,
    b: &SturmPoint,
) -> Result<usize, SturmError> {
    if !a.lt(b) {
        return Err(SturmError::EmptyInterval);
    }
    for c in [a, b] {
        if let SturmPoint::Finite(x) = c {
            if seq.reduced().sign_at(x) == 0 {
                return Err(SturmError::EndpointIsRoot(x.clone()));
            }
        }
    }
    let va = seq.sign_changes(a).changes;
    let vb = seq.sign_changes(b).changes;
    Ok(va.saturating_sub(vb))
}

/// Replaces an infinite endpoint by a finite bound beyond all real roots.
fn finitize(seq: &SturmSequence, a: &SturmPoint, b: &SturmPoint) -> (Rational, Rational) {
    let bound = seq.reduced().root_bound();
    let lo = match a {
        SturmPoint::NegInf => -bound.clone(),
        SturmPoint::Finite(x) => x.clone(),
        SturmPoint::PosInf => unreachable!("empty interval"),
    };
    let hi = match b {
        SturmPoint::PosInf => {
            let mut h = bound;
            if h <= lo {
                h = &lo + Rational::from_integer(1.into());
            }
            h
        }
        SturmPoint::Finite(x) => x.clone(),
        SturmPoint::NegInf => unreachable!("empty interval"),
    };
    (lo, hi)
}

/// Isolates the distinct real roots of `p` in `(a, b)`: returns disjoint
/// intervals in increasing order, each containing exactly one root and not
/// wider than 10^-3. A root hit exactly during bisection comes back as a
/// point interval.
pub fn isolate_roots(
    p: &Polynomial,
    a: &SturmPoint,
    b: &SturmPoint,
) -> Result<Vec<(Rational, Rational)>, SturmError> {
    isolate_roots_within(p, a, b, &Rational::new(1.into(), 1000.into()))
}

/// [`isolate_roots`] with an explicit width ceiling for the returned
/// intervals.
pub fn isolate_roots_within(
    p: &Polynomial,
    a: &SturmPoint,
    b: &SturmPoint,
    max_width: &Rational,
) -> Result<Vec<(Rational, Rational)>, SturmError> {
    let seq = SturmSequence::new_normalized(p)?;
    let total = count_roots_with(&seq, a, b)?;
    if total == 0 {
        return Ok(Vec::new());
    }
    let (lo, hi) = finitize(&seq, a, b);
    // the root bound is strict, so infinite sides never clip roots
    let mut out = Vec::with_capacity(total);
    isolate_rec(&seq, lo, hi, total, &mut out)?;
    for interval in &mut out {
        refine_bracket(seq.reduced(), interval, max_width);
    }
    Ok(out)
}

/// Shrinks a bracket around a simple root by sign bisection until its width
/// is at most `max_width`. Endpoints are known non-roots; hitting the root
/// exactly collapses the bracket to a point.
fn refine_bracket(p: &Polynomial, interval: &mut (Rational, Rational), max_width: &Rational) {
    let two = Rational::from_integer(2.into());
    if interval.0 == interval.1 {
        return;
    }
    let mut s_lo = p.sign_at(&interval.0);
    debug_assert!(s_lo != 0 && p.sign_at(&interval.1) != 0);
    while &interval.1 - &interval.0 > *max_width {
        let mid = (&interval.0 + &interval.1) / &two;
        let s_mid = p.sign_at(&mid);
        if s_mid == 0 {
            interval.0 = mid.clone();
            interval.1 = mid;
            return;
        }
        if s_mid == s_lo {
            interval.0 = mid;
        } else {
            interval.1 = mid;
        }
        s_lo = p.sign_at(&interval.0);
    }
}

fn isolate_rec(
    seq: &SturmSequence,
    lo: Rational,
    hi: Rational,
    count: usize,
    out: &mut Vec<(Rational, Rational)>,
) -> Result<(), SturmError> {
    if count == 0 {
        return Ok(());
    }
    if count == 1 {
        out.push((lo, hi));
        return Ok(());
    }
    let two = Rational::from_integer(2.into());
    let mid = (&lo + &hi) / &two;
    // dodge a root landing exactly on the midpoint: emit it as a point
    // interval and recurse on both sides of a gap around it
    if seq.reduced().sign_at(&mid) == 0 {
        let mut delta = (&hi - &lo) / Rational::from_integer(4.into());
        loop {
            let left_edge = &mid - &delta;
            let right_edge = &mid + &delta;
            if seq.reduced().sign_at(&left_edge) != 0
                && seq.reduced().sign_at(&right_edge) != 0
                && count_roots_with(seq, &left_edge.clone().into(), &right_edge.clone().into())?
                    == 1
            {
                let n_left =
                    count_roots_with(seq, &lo.clone().into(), &left_edge.clone().into())?;
                let n_right =
                    count_roots_with(seq, &right_edge.clone().into(), &hi.clone().into())?;
                isolate_rec(seq, lo, left_edge, n_left, out)?;
                out.push((mid.clone(), mid.clone()));
                isolate_rec(seq, right_edge, hi, n_right, out)?;
                return Ok(());
            }
            delta /= &two;
        }
    }
    let n_left = count_roots_with(seq, &lo.clone().into(), &mid.clone().into())?;
    isolate_rec(seq, lo, mid.clone(), n_left, out)?;
    isolate_rec(seq, mid, hi, count - n_left, out)?;
    Ok(())
}

/// Descartes bound: the number of sign alternations in the coefficient
/// list, an upper bound with matching parity on the positive real roots.
pub fn descartes_positive_bound(p: &Polynomial) -> usize {
    let mut changes = 0;
    let mut last = 0i32;
    for c in p.coeffs() {
        let s = if c.is_zero() {
            0
        } else if c.is_positive() {
            1
        } else {
            -1
        };
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Positivity certificate on `(a, b)` extended to finite endpoints:
/// true iff `p` has no root in the open interval, no root at a finite
/// endpoint, and is positive at a sample point of `[a, b]`.
pub fn is_positive_on(
    p: &Polynomial,
    a: &SturmPoint,
    b: &SturmPoint,
) -> Result<bool, SturmError> {
    if p.is_zero() {
        return Ok(false);
    }
    if p.degree() == Some(0) {
        return Ok(p.sign_at(&Rational::from_integer(0.into())) > 0);
    }
    let inside = count_roots(p, a, b)?; // errors if a finite endpoint is a root
    if inside > 0 {
        return Ok(false);
    }
    let sample_sign = match (a, b) {
        (SturmPoint::Finite(x), _) => p.sign_at(x),
        (_, SturmPoint::Finite(x)) => p.sign_at(x),
        (SturmPoint::NegInf, SturmPoint::PosInf) => {
            p.sign_at(&Rational::from_integer(0.into()))
        }
        _ => return Err(SturmError::EmptyInterval),
    };
    if sample_sign == 0 {
        // interior sample for a doubly-infinite interval landing on a root
        return Ok(false);
    }
    Ok(sample_sign > 0)
}
