//! Sandwich substitution and positivity certification.

use super::{
    coeff_strings, Claim, ExpEnvelope, ExpKernel, FEnvelope, MillsExpression, SubCertificate,
    SubStrategy, Verdict, VerifyError,
};
use crate::convergents::{double_factorial, pq};
use crate::polynomial::Polynomial;
use crate::rational::{rat, Rational};
use crate::sturm::{count_roots_with, isolate_roots_within, SturmPoint, SturmSequence};
use crate::symbolic::ConstExpr;
use crate::taylor::taylor_envelope;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A quotient of polynomials with symbolic-constant coefficients; the
/// denominator must be positive on the working interval.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    pub num: Polynomial<ConstExpr>,
    pub den: Polynomial<ConstExpr>,
}

impl RationalFunction {
    pub fn from_polynomial(p: &Polynomial<Rational>) -> Self {
        RationalFunction { num: lift(p), den: Polynomial::one() }
    }

    pub fn from_pair(num: &Polynomial<Rational>, den: &Polynomial<Rational>) -> Self {
        RationalFunction { num: lift(num), den: lift(den) }
    }

    pub fn from_symbolic(num: Polynomial<ConstExpr>) -> Self {
        RationalFunction { num, den: Polynomial::one() }
    }

    fn den_is_one(&self) -> bool {
        self.den == Polynomial::one()
    }
}

pub(crate) fn lift(p: &Polynomial<Rational>) -> Polynomial<ConstExpr> {
    p.map_coeffs(|c| ConstExpr::rational(c.clone()))
}

/// The exact symbolic Taylor polynomial of order `n`: the coefficient of
/// `x^k` is `s/k!!` for even `k` (with `s = sqrt(pi/2)`) and `-1/k!!` for
/// odd `k`.
pub fn taylor_symbolic(n: usize) -> Polynomial<ConstExpr> {
    Polynomial::new(
        (0..=n)
            .map(|k| {
                let dfac = Rational::from_integer(double_factorial(k as i64)).recip();
                if k % 2 == 0 {
                    ConstExpr::sqrt_pi_over_2().scale(&dfac)
                } else {
                    ConstExpr::rational(-dfac)
                }
            })
            .collect(),
    )
}

/// Replaces `f` in positively-signed terms by `lower` and in
/// negatively-signed terms by `upper`, clears the common positive
/// denominator, and applies the directed constant replacement to each
/// collected coefficient. The result, divided by that positive
/// denominator, is a pointwise lower bound of the expression for `x >= 0`.
///
/// When the cleared numerator has integer coefficients, its positive
/// integer content is stripped (positivity is unaffected); fractional
/// coefficients are kept verbatim.
pub fn substitute_sandwich(
    expr: &MillsExpression,
    lower: &RationalFunction,
    upper: &RationalFunction,
    constant_precision: u32,
) -> Result<Polynomial<Rational>, VerifyError> {
    let sym = assemble(expr, None, None, lower, upper, constant_precision)?;
    Ok(finalize(&sym, constant_precision))
}

/// Builds the cleared symbolic numerator of the substituted expression.
fn assemble(
    expr: &MillsExpression,
    exp_kernel: Option<&ExpKernel>,
    exp_envelope: Option<&ExpEnvelope>,
    lower: &RationalFunction,
    upper: &RationalFunction,
    precision: u32,
) -> Result<Polynomial<ConstExpr>, VerifyError> {
    // resolve term signs first; they decide the envelope of every factor
    let mut signs = Vec::with_capacity(expr.terms.len());
    for t in &expr.terms {
        match t.coeff.definite_sign(precision.max(6)) {
            Some(s) => signs.push(s),
            None => {
                return Err(VerifyError::IndeterminateCoefficient(format!(
                    "{} x^{} f^{}",
                    t.coeff, t.x_pow, t.f_pow
                )))
            }
        }
    }
    let exp_sign = match (exp_kernel, exp_envelope) {
        (Some(k), Some(_)) => match k.coeff.definite_sign(precision.max(6)) {
            Some(s) => s,
            None => {
                return Err(VerifyError::IndeterminateCoefficient(format!(
                    "exponential coefficient {}",
                    k.coeff
                )))
            }
        },
        (Some(_), None) => {
            return Err(VerifyError::BadStrategy(
                "claim has an exponential kernel but the subinterval names no envelope".into(),
            ))
        }
        _ => 0,
    };

    // maximal f-powers routed to each member fix the common denominator
    let mut k_lower = 0u32;
    let mut k_upper = 0u32;
    for (t, s) in expr.terms.iter().zip(&signs) {
        if t.f_pow == 0 || *s == 0 {
            continue;
        }
        if *s > 0 {
            k_lower = k_lower.max(t.f_pow);
        } else {
            k_upper = k_upper.max(t.f_pow);
        }
    }

    // the power-bound envelope contributes a monomial denominator
    let exp_power_den: Option<(ConstExpr, u32)> = match (exp_kernel, exp_envelope) {
        (Some(k), Some(ExpEnvelope::PowerUpper { m })) => {
            if exp_sign >= 0 {
                return Err(VerifyError::BadStrategy(
                    "power bound is an upper envelope; the exponential term must be negative"
                        .into(),
                ));
            }
            Some((k.rate.pow(*m), m * k.arg_power))
        }
        _ => None,
    };

    let den_l_pow = |e: u32| lower.den.pow(e);
    let den_u_pow = |e: u32| upper.den.pow(e);

    let mut acc: Polynomial<ConstExpr> = Polynomial::zero();
    for (t, s) in expr.terms.iter().zip(&signs) {
        if *s == 0 {
            continue;
        }
        let (env, dl, du) = if t.f_pow == 0 {
            (None, 0, 0)
        } else if *s > 0 {
            (Some(lower), t.f_pow, 0)
        } else {
            (Some(upper), 0, t.f_pow)
        };
        let mut piece = Polynomial::monomial(t.coeff.clone(), t.x_pow as usize);
        if let Some(rf) = env {
            piece = piece.mul(&rf.num.pow(t.f_pow));
        }
        piece = piece.mul(&den_l_pow(k_lower - dl));
        piece = piece.mul(&den_u_pow(k_upper - du));
        if let Some((rm, xm)) = &exp_power_den {
            piece = piece.scale(rm).shift_up(*xm as usize);
        }
        acc = acc.add(&piece);
    }

    if let (Some(kernel), Some(envelope)) = (exp_kernel, exp_envelope) {
        let kernel_piece: Option<Polynomial<ConstExpr>> = match envelope {
            ExpEnvelope::Series { order } => {
                let want_lower = exp_sign > 0;
                if want_lower != (order % 2 == 1) {
                    return Err(VerifyError::BadStrategy(format!(
                        "series order {order} envelopes e^(-t) from the wrong side for a \
                         {} exponential term",
                        if exp_sign > 0 { "positive" } else { "negative" }
                    )));
                }
                Some(exp_series(kernel, *order))
            }
            ExpEnvelope::PowerUpper { m } => {
                // numerator m!; its monomial denominator is already in the
                // common denominator, so the piece skips that factor
                let mfact = (1..=*m as i64)
                    .fold(Rational::one(), |a, k| a * Rational::from_integer(k.into()));
                Some(Polynomial::constant(ConstExpr::rational(mfact)))
            }
            ExpEnvelope::Drop => {
                if exp_sign <= 0 {
                    return Err(VerifyError::BadStrategy(
                        "dropping the exponential uses e^(-t) >= 0, a lower envelope; the \
                         term must be positive"
                            .into(),
                    ));
                }
                None
            }
        };
        if let Some(kp) = kernel_piece {
            let mut piece = Polynomial::monomial(kernel.coeff.clone(), kernel.x_pow as usize);
            piece = piece.mul(&kp);
            piece = piece.mul(&den_l_pow(k_lower));
            piece = piece.mul(&den_u_pow(k_upper));
            if matches!(envelope, ExpEnvelope::Series { .. }) {
                if let Some((rm, xm)) = &exp_power_den {
                    piece = piece.scale(rm).shift_up(*xm as usize);
                }
            }
            acc = acc.add(&piece);
        }
    }

    Ok(acc)
}

/// `E_m(rate * x^d) = sum_{k<=m} (-rate)^k x^(dk) / k!` as a symbolic
/// polynomial in `x`.
fn exp_series(kernel: &ExpKernel, order: usize) -> Polynomial<ConstExpr> {
    let mut coeffs = vec![ConstExpr::zero(); order * kernel.arg_power as usize + 1];
    let mut factor = ConstExpr::one(); // (-rate)^k / k!
    coeffs[0] = factor.clone();
    for k in 1..=order {
        factor = factor * (-kernel.rate.clone());
        factor = factor.scale(&rat(1, k as i64));
        coeffs[k * kernel.arg_power as usize] = factor.clone();
    }
    Polynomial::new(coeffs)
}

/// Directed rationalization plus integer-content stripping.
fn finalize(sym: &Polynomial<ConstExpr>, precision: u32) -> Polynomial<Rational> {
    let directed = Polynomial::new(
        sym.coeffs()
            .iter()
            .map(|c| c.directed_low(precision))
            .collect(),
    );
    if directed.is_zero() {
        return directed;
    }
    let all_integer = directed.coeffs().iter().all(|c| c.denom().is_one());
    if all_integer {
        let content = directed
            .coeffs()
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
        if content > BigInt::one() {
            return directed.scale(&Rational::from_integer(content).recip());
        }
    }
    directed
}

/// Evidence that a polynomial is positive on an interval, with the nearest
/// root beyond the interval isolated for the record.
#[derive(Debug, Clone)]
pub struct PositivityReport {
    pub positive: bool,
    pub root_count_inside: usize,
    pub endpoint_signs: (i32, i32),
    pub total_real_roots: Option<usize>,
    pub nearest_external_root: Option<(Rational, Rational)>,
}

/// Certifies `p > 0` on the closed interval (finite endpoints included;
/// an infinite endpoint uses the leading-coefficient sign) and isolates the
/// nearest real root outside it.
pub fn certify_positive(
    p: &Polynomial<Rational>,
    lo: &SturmPoint,
    hi: &SturmPoint,
) -> Result<PositivityReport, VerifyError> {
    if p.is_zero() {
        return Ok(PositivityReport {
            positive: false,
            root_count_inside: 0,
            endpoint_signs: (0, 0),
            total_real_roots: None,
            nearest_external_root: None,
        });
    }
    let seq = SturmSequence::new_normalized(p)?;
    let sign_at_point = |pt: &SturmPoint| match pt {
        SturmPoint::NegInf => p.sign_at_neg_inf(),
        SturmPoint::Finite(x) => p.sign_at(x),
        SturmPoint::PosInf => p.sign_at_pos_inf(),
    };
    let s_lo = sign_at_point(lo);
    let s_hi = sign_at_point(hi);
    if s_lo == 0 || s_hi == 0 {
        return Ok(PositivityReport {
            positive: false,
            root_count_inside: 0,
            endpoint_signs: (s_lo, s_hi),
            total_real_roots: None,
            nearest_external_root: None,
        });
    }
    let inside = count_roots_with(&seq, lo, hi)?;
    let positive = inside == 0 && s_lo > 0 && s_hi > 0;
    let total = count_roots_with(&seq, &SturmPoint::NegInf, &SturmPoint::PosInf).ok();
    let nearest = match (lo, hi) {
        (_, SturmPoint::Finite(b)) => nearest_root_above(p, b),
        (SturmPoint::Finite(a), _) => nearest_root_below(p, a),
        _ => None,
    };
    Ok(PositivityReport {
        positive,
        root_count_inside: inside,
        endpoint_signs: (s_lo, s_hi),
        total_real_roots: total,
        nearest_external_root: nearest,
    })
}

fn nearest_root_above(p: &Polynomial<Rational>, from: &Rational) -> Option<(Rational, Rational)> {
    let seq = SturmSequence::new_normalized(p).ok()?;
    let bound = p.root_bound();
    let mut width = rat(1, 2);
    let mut lo = from.clone();
    loop {
        if lo > bound {
            return None;
        }
        let mut hi = &lo + &width;
        // nudge off a root landing exactly on the window edge
        while p.sign_at(&hi) == 0 {
            hi += rat(1, 997);
        }
        match count_roots_with(&seq, &lo.clone().into(), &hi.clone().into()) {
            Ok(0) => {
                lo = hi;
                width = &width * Rational::from_integer(2.into());
            }
            Ok(_) => {
                let roots =
                    isolate_roots_within(p, &lo.clone().into(), &hi.into(), &rat(1, 128)).ok()?;
                return roots.into_iter().next();
            }
            Err(_) => return None,
        }
    }
}

fn nearest_root_below(p: &Polynomial<Rational>, from: &Rational) -> Option<(Rational, Rational)> {
    let seq = SturmSequence::new_normalized(p).ok()?;
    let bound = -p.root_bound();
    let mut width = rat(1, 2);
    let mut hi = from.clone();
    loop {
        if hi < bound {
            return None;
        }
        let mut lo = &hi - &width;
        while p.sign_at(&lo) == 0 {
            lo -= rat(1, 997);
        }
        match count_roots_with(&seq, &lo.clone().into(), &hi.clone().into()) {
            Ok(0) => {
                hi = lo;
                width = &width * Rational::from_integer(2.into());
            }
            Ok(_) => {
                let roots =
                    isolate_roots_within(p, &lo.into(), &hi.into(), &rat(1, 128)).ok()?;
                return roots.into_iter().last();
            }
            Err(_) => return None,
        }
    }
}

/// Builds the envelope pair named by the strategy.
fn build_envelopes(
    strategy: &SubStrategy,
) -> Result<(RationalFunction, RationalFunction, String), VerifyError> {
    match &strategy.envelope {
        FEnvelope::TaylorRational { order, precision } => {
            if order % 2 == 0 {
                return Err(VerifyError::BadStrategy("Taylor order must be odd".into()));
            }
            let env = taylor_envelope(*order, *precision);
            Ok((
                RationalFunction::from_polynomial(&env.lower),
                RationalFunction::from_polynomial(&env.upper),
                format!("taylor_rational(order={order}, precision={precision})"),
            ))
        }
        FEnvelope::TaylorSymbolic { order } => {
            if order % 2 == 0 {
                return Err(VerifyError::BadStrategy("Taylor order must be odd".into()));
            }
            Ok((
                RationalFunction::from_symbolic(taylor_symbolic(*order)),
                RationalFunction::from_symbolic(taylor_symbolic(order + 1)),
                format!("taylor_symbolic(order={order})"),
            ))
        }
        FEnvelope::Convergent { even_index } => {
            let n = *even_index;
            if n % 2 != 0 || n == 0 {
                return Err(VerifyError::BadStrategy(
                    "convergent lower index must be even and positive".into(),
                ));
            }
            if !strategy.lo.is_positive() {
                return Err(VerifyError::BadStrategy(
                    "convergent envelopes need a positive interval (P_odd(0) = 0)".into(),
                ));
            }
            let lo_pair = pq(n);
            let hi_pair = pq(n + 1);
            Ok((
                RationalFunction::from_pair(&lo_pair.q, &lo_pair.p),
                RationalFunction::from_pair(&hi_pair.q, &hi_pair.p),
                format!("convergents(Q{}/P{} < f < Q{}/P{})", n, n, n + 1, n + 1),
            ))
        }
    }
}

/// A lower envelope raised to a power `>= 2` must be certified nonnegative
/// on the subinterval for the substitution to stay directed.
fn lower_envelope_nonnegative(
    lower: &RationalFunction,
    strategy: &SubStrategy,
    precision: u32,
) -> Result<bool, VerifyError> {
    if lower.den_is_one() {
        let directed = Polynomial::new(
            lower
                .num
                .coeffs()
                .iter()
                .map(|c| c.directed_low(precision))
                .collect(),
        );
        let lo = SturmPoint::Finite(strategy.lo.clone());
        let hi = match &strategy.hi {
            Some(b) => SturmPoint::Finite(b.clone()),
            None => SturmPoint::PosInf,
        };
        Ok(certify_positive(&directed, &lo, &hi)?.positive)
    } else {
        // convergent envelopes have nonnegative coefficients; positive on x > 0
        let ok = lower.num.coeffs().iter().all(|c| {
            c.as_rational().is_some_and(|q| !q.is_negative())
        }) && lower.den.coeffs().iter().all(|c| {
            c.as_rational().is_some_and(|q| !q.is_negative())
        });
        Ok(ok)
    }
}

/// Verifies one claim, subinterval by subinterval.
pub fn verify_claim(claim: &Claim) -> Result<ClaimOutcome, VerifyError> {
    let mut subcerts = Vec::new();
    let mut verdict = Verdict::Proved;
    for strategy in &claim.subclaims {
        let sub = verify_subclaim(claim, strategy);
        match sub {
            Ok(sc) => {
                if sc.verdict != Verdict::Proved && verdict == Verdict::Proved {
                    verdict = sc.verdict;
                }
                subcerts.push(sc);
            }
            Err(VerifyError::IndeterminateCoefficient(msg))
            | Err(VerifyError::BadStrategy(msg)) => {
                verdict = Verdict::Indeterminate;
                subcerts.push(SubCertificate {
                    interval: interval_strings(strategy),
                    envelope: String::new(),
                    polynomial: Vec::new(),
                    origin_multiplicity: 0,
                    root_count_inside: 0,
                    endpoint_signs: (0, 0),
                    nearest_external_root: None,
                    verdict: Verdict::Indeterminate,
                    note: Some(msg),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ClaimOutcome { verdict, subcertificates: subcerts })
}

/// Result of [`verify_claim`]; the claim registry wraps it with ids and
/// derivation notes into a full [`super::Certificate`].
pub struct ClaimOutcome {
    pub verdict: Verdict,
    pub subcertificates: Vec<SubCertificate>,
}

fn interval_strings(strategy: &SubStrategy) -> (String, String) {
    (
        strategy.lo.to_string(),
        strategy
            .hi
            .as_ref()
            .map(|h| h.to_string())
            .unwrap_or_else(|| "+inf".into()),
    )
}

fn verify_subclaim(
    claim: &Claim,
    strategy: &SubStrategy,
) -> Result<SubCertificate, VerifyError> {
    let precision = claim.constant_precision;
    let (lower, upper, envelope_desc) = build_envelopes(strategy)?;

    // precondition: lower envelope nonnegative when raised to powers >= 2
    let needs_nonneg = claim
        .expression
        .terms
        .iter()
        .any(|t| t.f_pow >= 2 && t.coeff.definite_sign(precision.max(6)) == Some(1));
    if needs_nonneg && !lower_envelope_nonnegative(&lower, strategy, precision)? {
        return Ok(SubCertificate {
            interval: interval_strings(strategy),
            envelope: envelope_desc,
            polynomial: Vec::new(),
            origin_multiplicity: 0,
            root_count_inside: 0,
            endpoint_signs: (0, 0),
            nearest_external_root: None,
            verdict: Verdict::Indeterminate,
            note: Some("lower envelope could not be certified nonnegative".into()),
        });
    }

    let sym = assemble(
        &claim.expression,
        claim.exp_kernel.as_ref(),
        strategy.exp_envelope.as_ref(),
        &lower,
        &upper,
        precision,
    )?;
    let cleared = finalize(&sym, precision);
    if cleared.is_zero() {
        return Ok(SubCertificate {
            interval: interval_strings(strategy),
            envelope: envelope_desc,
            polynomial: Vec::new(),
            origin_multiplicity: 0,
            root_count_inside: 0,
            endpoint_signs: (0, 0),
            nearest_external_root: None,
            verdict: Verdict::Failed,
            note: Some("substituted expression collapses to zero".into()),
        });
    }
    let multiplicity = cleared.order_at_origin();
    let reduced = cleared.shift_down(multiplicity);

    let lo_pt = SturmPoint::Finite(strategy.lo.clone());
    let hi_pt = match &strategy.hi {
        Some(b) => SturmPoint::Finite(b.clone()),
        None => SturmPoint::PosInf,
    };
    let report = certify_positive(&reduced, &lo_pt, &hi_pt)?;
    let verdict = if report.positive {
        Verdict::Proved
    } else if report.endpoint_signs.0 == 0 || report.endpoint_signs.1 == 0 {
        Verdict::Indeterminate
    } else {
        Verdict::Failed
    };
    Ok(SubCertificate {
        interval: interval_strings(strategy),
        envelope: envelope_desc,
        polynomial: coeff_strings(&reduced),
        origin_multiplicity: multiplicity,
        root_count_inside: report.root_count_inside,
        endpoint_signs: report.endpoint_signs,
        nearest_external_root: report
            .nearest_external_root
            .map(|(a, b)| (a.to_string(), b.to_string())),
        verdict,
        note: None,
    })
}

