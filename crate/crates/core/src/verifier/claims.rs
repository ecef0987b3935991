//! The built-in claim registry: convexity of the reciprocal, the four
//! square-root bounds and their local variants, the Pade pair at the
//! origin, the simple and quadratic rational pairs, the exponential-ratio
//! pair, and the Chernoff-type bounds with their Q-function forms.
//!
//! Each claim stores the inequality with radicals already cleared, as a
//! sign-split polynomial in `x` and `f` (plus at most one exponential
//! kernel), together with the subinterval strategies that certify it.

use super::engine::{verify_claim, ClaimOutcome};
use super::{
    term, Certificate, Claim, DerivedFrom, ExpEnvelope, ExpKernel, FEnvelope, MillsExpression,
    SubStrategy, VerifyError,
};
use crate::rational::{parse_rational, rat, rat_int, Rational};
use crate::symbolic::ConstExpr;
use num_traits::{One, Zero};

fn ce(n: i64) -> ConstExpr {
    ConstExpr::from_int(n)
}

fn pi() -> ConstExpr {
    ConstExpr::pi()
}

fn pi2() -> ConstExpr {
    ConstExpr::pi_squared()
}

/// `s = sqrt(pi/2)`, so `sqrt(2*pi) = 2s`.
fn s() -> ConstExpr {
    ConstExpr::sqrt_pi_over_2()
}

fn fin(lo: Rational, hi: Rational, envelope: FEnvelope) -> SubStrategy {
    SubStrategy { lo, hi: Some(hi), envelope, exp_envelope: None }
}

fn tail(lo: Rational, envelope: FEnvelope) -> SubStrategy {
    SubStrategy { lo, hi: None, envelope, exp_envelope: None }
}

fn with_exp(mut s: SubStrategy, e: ExpEnvelope) -> SubStrategy {
    s.exp_envelope = Some(e);
    s
}

fn taylor_rat(order: usize, precision: u32) -> FEnvelope {
    FEnvelope::TaylorRational { order, precision }
}

fn taylor_sym(order: usize) -> FEnvelope {
    FEnvelope::TaylorSymbolic { order }
}

fn conv(even_index: usize) -> FEnvelope {
    FEnvelope::Convergent { even_index }
}

fn zero() -> Rational {
    rat_int(0)
}

fn one() -> Rational {
    Rational::one()
}

/// The convexity expression `g = 2 + x^2 f^2 - f^2 - 3 x f`.
fn convexity_expression() -> MillsExpression {
    MillsExpression::new(vec![
        term(ce(2), 0, 0),
        term(ce(1), 2, 2),
        term(-ce(1), 0, 2),
        term(-ce(3), 1, 1),
    ])
}

fn simple_claim(
    id: &str,
    description: &str,
    terms: Vec<super::MillsTerm>,
    subclaims: Vec<SubStrategy>,
) -> Claim {
    Claim {
        id: id.into(),
        description: description.into(),
        expression: MillsExpression::new(terms),
        exp_kernel: None,
        subclaims,
        constant_precision: 1,
        derived_from: None,
    }
}

/// Every claim of the registry, in a fixed order.
pub fn builtin_claims() -> Vec<Claim> {
    let mut claims = Vec::new();

    // --- convexity of 1/f and the equivalent square-root upper bound ---
    claims.push(simple_claim(
        "convexity_g_positive",
        "1/f is strictly convex: 2 + x^2 f^2 - f^2 - 3 x f > 0 on (0, inf)",
        convexity_expression().terms,
        vec![
            fin(zero(), one(), taylor_rat(7, 1)),
            tail(one(), conv(10)),
        ],
    ));
    claims.push(simple_claim(
        "W03_upper",
        "f < 4/(sqrt(x^2+8) + 3x); equivalent to the convexity expression",
        convexity_expression().terms,
        vec![
            fin(zero(), one(), taylor_rat(7, 1)),
            tail(one(), conv(10)),
        ],
    ));

    // --- square-root family: radicals cleared by squaring once ---
    claims.push(simple_claim(
        "W30_lower",
        "pi/(sqrt(2x^2(4-pi) + 2pi) + 2x) < f: \
         4x^2 f^2 - 2pi x^2 f^2 + 2pi f^2 + 4pi x f - pi^2 > 0",
        vec![
            term(ce(4), 2, 2),
            term(pi().scale(&rat_int(-2)), 2, 2),
            term(pi().scale(&rat_int(2)), 0, 2),
            term(pi().scale(&rat_int(4)), 1, 1),
            term(-pi2(), 0, 0),
        ],
        vec![
            fin(zero(), one(), taylor_sym(7)),
            tail(one(), conv(20)),
        ],
    ));
    claims.push(simple_claim(
        "W12_lower",
        "pi/(sqrt(x^2+2pi) + (pi-1)x) < f: \
         (2pi - pi^2) x^2 f^2 + 2pi f^2 + (2pi^2 - 2pi) x f - pi^2 > 0",
        vec![
            term(pi().scale(&rat_int(2)) - pi2(), 2, 2),
            term(pi().scale(&rat_int(2)), 0, 2),
            term(pi2().scale(&rat_int(2)) - pi().scale(&rat_int(2)), 1, 1),
            term(-pi2(), 0, 0),
        ],
        vec![
            fin(zero(), one(), taylor_sym(7)),
            tail(one(), conv(16)),
        ],
    ));
    claims.push(simple_claim(
        "W21_upper",
        "f < pi/(sqrt((pi-2)^2 x^2 + 2pi) + 2x): \
         pi^2 - 4pi x f + (4pi - pi^2) x^2 f^2 - 2pi f^2 > 0",
        vec![
            term(pi2(), 0, 0),
            term(pi().scale(&rat_int(-4)), 1, 1),
            term(pi().scale(&rat_int(4)) - pi2(), 2, 2),
            term(pi().scale(&rat_int(-2)), 0, 2),
        ],
        vec![
            fin(zero(), one(), taylor_sym(7)),
            tail(one(), conv(16)),
        ],
    ));
    claims.push(simple_claim(
        "local2_lower",
        "200/(sqrt(1521x^2 + 25600) + 161x) < f: \
         -24400 x^2 f^2 + 25600 f^2 + 64400 x f - 40000 > 0",
        vec![
            term(ce(-24400), 2, 2),
            term(ce(25600), 0, 2),
            term(ce(64400), 1, 1),
            term(ce(-40000), 0, 0),
        ],
        vec![
            fin(zero(), one(), taylor_sym(7)),
            tail(one(), conv(12)),
        ],
    ));
    claims.push(simple_claim(
        "local2_upper",
        "f < 192/(sqrt(4225x^2 + 20736) + 127x): \
         36864 - 48768 x f + 11904 x^2 f^2 - 20736 f^2 > 0",
        vec![
            term(ce(36864), 0, 0),
            term(ce(-48768), 1, 1),
            term(ce(11904), 2, 2),
            term(ce(-20736), 0, 2),
        ],
        vec![
            fin(zero(), one(), taylor_sym(7)),
            tail(one(), conv(12)),
        ],
    ));

    // --- Pade pair at the origin ---
    claims.push(simple_claim(
        "pade_p01_upper",
        "f < pi/(sqrt(2pi) + 2x): pi - sqrt(2pi) f - 2 x f > 0",
        vec![
            term(pi(), 0, 0),
            term(s().scale(&rat_int(-2)), 0, 1),
            term(ce(-2), 1, 1),
        ],
        vec![
            fin(zero(), one(), taylor_sym(7)),
            tail(one(), conv(12)),
        ],
    ));
    claims.push(simple_claim(
        "pade_p12_lower",
        "the [1/2] Pade approximant at 0 is a lower bound; cleared against \
         its negative denominator",
        vec![
            term(pi() * s().scale(&rat_int(12)) - s().scale(&rat_int(48)), 0, 0),
            term(ce(48) - pi().scale(&rat_int(16)), 1, 0),
            term(ce(48) - pi().scale(&rat_int(12)), 0, 1),
            term(s().scale(&rat_int(8)), 1, 1),
            term(pi().scale(&rat_int(6)) - ce(16), 2, 1),
        ],
        vec![
            fin(zero(), one(), taylor_sym(11)),
            tail(one(), conv(24)),
        ],
    ));

    // --- simple rational bounds ---
    claims.push(simple_claim(
        "U11_lower",
        "pi/(sqrt(2pi) + pi x) < f: sqrt(2pi) f + pi x f - pi > 0",
        vec![
            term(s().scale(&rat_int(2)), 0, 1),
            term(pi(), 1, 1),
            term(-pi(), 0, 0),
        ],
        vec![
            fin(zero(), one(), taylor_sym(7)),
            tail(one(), conv(12)),
        ],
    ));
    claims.push(simple_claim(
        "U20_upper",
        "f < pi/(sqrt(2pi) + 2x); the same bound as the [0/1] Pade member",
        vec![
            term(pi(), 0, 0),
            term(s().scale(&rat_int(-2)), 0, 1),
            term(ce(-2), 1, 1),
        ],
        vec![
            fin(zero(), one(), taylor_sym(7)),
            tail(one(), conv(12)),
        ],
    ));
    claims.push(simple_claim(
        "U_rational_lower",
        "105/(91 + 110x) < f: 91 f + 110 x f - 105 > 0",
        vec![
            term(ce(91), 0, 1),
            term(ce(110), 1, 1),
            term(ce(-105), 0, 0),
        ],
        vec![
            fin(zero(), one(), taylor_sym(7)),
            tail(one(), conv(12)),
        ],
    ));
    claims.push(simple_claim(
        "U_rational_upper",
        "f < 44/(35 + 28x): 44 - 35 f - 28 x f > 0",
        vec![
            term(ce(44), 0, 0),
            term(ce(-35), 0, 1),
            term(ce(-28), 1, 1),
        ],
        vec![
            fin(zero(), one(), taylor_sym(7)),
            tail(one(), conv(12)),
        ],
    ));

    // --- quadratic rational bounds ---
    claims.push(simple_claim(
        "V22_lower",
        "(sqrt(2pi) + (pi-2)x)/(2 + sqrt(2pi)x + (pi-2)x^2) < f",
        vec![
            term(ce(2), 0, 1),
            term(s().scale(&rat_int(2)), 1, 1),
            term(pi() - ce(2), 2, 1),
            term(s().scale(&rat_int(-2)), 0, 0),
            term(ce(2) - pi(), 1, 0),
        ],
        vec![
            fin(zero(), one(), taylor_sym(7)),
            tail(one(), conv(16)),
        ],
    ));
    claims.push(simple_claim(
        "V13_upper",
        "f < (sqrt(2pi) + 2x)/(2 + sqrt(2pi)x + 2x^2)",
        vec![
            term(s().scale(&rat_int(2)), 0, 0),
            term(ce(2), 1, 0),
            term(ce(-2), 0, 1),
            term(s().scale(&rat_int(-2)), 1, 1),
            term(ce(-2), 2, 1),
        ],
        vec![
            fin(zero(), one(), taylor_sym(7)),
            tail(one(), conv(12)),
        ],
    ));
    claims.push(simple_claim(
        "V31_upper",
        "f < (sqrt(2pi)(pi-2) + (4-pi)x)/(2(pi-2) + sqrt(2pi)x + (4-pi)x^2)",
        vec![
            term(pi() * s().scale(&rat_int(2)) - s().scale(&rat_int(4)), 0, 0),
            term(ce(4) - pi(), 1, 0),
            term(ce(4) - pi().scale(&rat_int(2)), 0, 1),
            term(s().scale(&rat_int(-2)), 1, 1),
            term(pi() - ce(4), 2, 1),
        ],
        vec![
            fin(zero(), one(), taylor_sym(11)),
            tail(one(), conv(24)),
        ],
    ));
    claims.push(simple_claim(
        "V_rational_lower",
        "(35 + 15x)/(28 + 37x + 16x^2) < f: 28 f + 37 x f + 16 x^2 f - 35 - 15 x > 0",
        vec![
            term(ce(28), 0, 1),
            term(ce(37), 1, 1),
            term(ce(16), 2, 1),
            term(ce(-35), 0, 0),
            term(ce(-15), 1, 0),
        ],
        vec![
            fin(zero(), one(), taylor_sym(7)),
            tail(one(), conv(12)),
        ],
    ));
    claims.push(simple_claim(
        "V_rational_upper",
        "f < (2/5)(13 + 10x)/(4 + 5x + 4x^2): 26 + 20x - 20 f - 25 x f - 20 x^2 f > 0",
        vec![
            term(ce(26), 0, 0),
            term(ce(20), 1, 0),
            term(ce(-20), 0, 1),
            term(ce(-25), 1, 1),
            term(ce(-20), 2, 1),
        ],
        vec![
            fin(zero(), one(), taylor_sym(7)),
            tail(one(), conv(12)),
        ],
    ));

    // --- exponential-ratio bounds; scaled by pi to keep coefficients in
    //     the ring: pi * (b x f - 1 + e^(-a x)) with b = 4/pi ---
    claims.push(Claim {
        id: "Z20_lower".into(),
        description: "(1 - e^(-4x/sqrt(2pi)))/(4x/pi) < f: \
                      4 x f - pi + pi e^(-4x/sqrt(2pi)) > 0"
            .into(),
        expression: MillsExpression::new(vec![
            term(ce(4), 1, 1),
            term(-pi(), 0, 0),
        ]),
        exp_kernel: Some(ExpKernel {
            // 4/sqrt(2pi) = 2/s = 4 s / pi
            rate: ConstExpr::monomial(rat_int(4), -1, true),
            arg_power: 1,
            coeff: pi(),
            x_pow: 0,
        }),
        subclaims: vec![
            with_exp(fin(zero(), one(), taylor_sym(7)), ExpEnvelope::Series { order: 13 }),
            with_exp(fin(one(), rat_int(2), conv(12)), ExpEnvelope::Series { order: 13 }),
            with_exp(tail(rat_int(2), conv(12)), ExpEnvelope::Drop),
        ],
        constant_precision: 1,
        derived_from: None,
    });
    claims.push(Claim {
        id: "Z11_upper".into(),
        description: "f < (1 - e^(-sqrt(2pi)x/2))/x: 1 - x f - e^(-sqrt(pi/2) x) > 0".into(),
        expression: MillsExpression::new(vec![
            term(ce(1), 0, 0),
            term(ce(-1), 1, 1),
        ]),
        exp_kernel: Some(ExpKernel {
            rate: s(),
            arg_power: 1,
            coeff: -ce(1),
            x_pow: 0,
        }),
        subclaims: vec![
            with_exp(fin(zero(), one(), taylor_sym(7)), ExpEnvelope::Series { order: 12 }),
            with_exp(fin(one(), rat_int(2), conv(12)), ExpEnvelope::Series { order: 12 }),
            with_exp(fin(rat_int(2), rat(9, 2), conv(12)), ExpEnvelope::Series { order: 20 }),
            with_exp(tail(rat(9, 2), conv(12)), ExpEnvelope::PowerUpper { m: 6 }),
        ],
        constant_precision: 1,
        derived_from: None,
    });

    // --- Chernoff-type bounds ---
    claims.push(Claim {
        id: "chernoff_lower".into(),
        description: "e^(-3x^2/5) < f on (0, inf)".into(),
        expression: MillsExpression::new(vec![term(ce(1), 0, 1)]),
        exp_kernel: Some(ExpKernel {
            rate: ConstExpr::rational(rat(3, 5)),
            arg_power: 2,
            coeff: -ce(1),
            x_pow: 0,
        }),
        subclaims: vec![
            with_exp(fin(zero(), one(), taylor_sym(7)), ExpEnvelope::Series { order: 8 }),
            with_exp(fin(one(), rat(5, 2), conv(12)), ExpEnvelope::Series { order: 12 }),
            with_exp(tail(rat(5, 2), conv(2)), ExpEnvelope::PowerUpper { m: 3 }),
        ],
        constant_precision: 1,
        derived_from: None,
    });
    claims.push(simple_claim(
        "f_decreasing",
        "1 - x f > 0 on (0, inf), i.e. f' = x f - 1 < 0",
        vec![term(ce(1), 0, 0), term(ce(-1), 1, 1)],
        vec![
            fin(zero(), one(), taylor_sym(7)),
            tail(one(), conv(2)),
        ],
    ));
    claims.push(Claim {
        id: "chernoff_upper".into(),
        description: "f < sqrt(pi/2) on (0, inf)".into(),
        expression: MillsExpression::default(),
        exp_kernel: None,
        subclaims: Vec::new(),
        constant_precision: 1,
        derived_from: Some(DerivedFrom {
            base_id: "f_decreasing".into(),
            note: "f(0) = sqrt(pi/2) and f' = x f - 1 < 0 make f strictly \
                   decreasing, so f(x) < f(0) for x > 0"
                .into(),
        }),
    });
    claims.push(Claim {
        id: "qfunc_lower".into(),
        description: "(1/sqrt(2pi)) e^(-11x^2/10) < Q(x) on (0, inf)".into(),
        expression: MillsExpression::default(),
        exp_kernel: None,
        subclaims: Vec::new(),
        constant_precision: 1,
        derived_from: Some(DerivedFrom {
            base_id: "chernoff_lower".into(),
            note: "dividing by the Gaussian density turns the claim into \
                   e^(-11x^2/10 + x^2/2) = e^(-3x^2/5) < f(x) exactly"
                .into(),
        }),
    });
    claims.push(Claim {
        id: "qfunc_upper".into(),
        description: "Q(x) < (1/2) e^(-x^2/2) on (0, inf)".into(),
        expression: MillsExpression::default(),
        exp_kernel: None,
        subclaims: Vec::new(),
        constant_precision: 1,
        derived_from: Some(DerivedFrom {
            base_id: "chernoff_upper".into(),
            note: "dividing by the Gaussian density turns the claim into \
                   f(x) < sqrt(2pi)/2 = sqrt(pi/2) exactly"
                .into(),
        }),
    });

    claims
}

/// Ids of every registered claim, in registry order.
pub fn builtin_claim_ids() -> Vec<String> {
    builtin_claims().into_iter().map(|c| c.id).collect()
}

pub fn claim_by_id(id: &str) -> Result<Claim, VerifyError> {
    builtin_claims()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| VerifyError::UnknownClaim(id.to_string()))
}

/// Verifies one registered claim, resolving derived claims through their
/// base claim.
pub fn verify_claim_by_id(id: &str) -> Result<Certificate, VerifyError> {
    let claim = claim_by_id(id)?;
    certify(&claim)
}

/// Verifies a [`Claim`] into a full [`Certificate`].
pub fn certify(claim: &Claim) -> Result<Certificate, VerifyError> {
    if let Some(derived) = &claim.derived_from {
        let base = verify_claim_by_id(&derived.base_id)?;
        return Ok(Certificate {
            claim_id: claim.id.clone(),
            description: claim.description.clone(),
            verdict: base.verdict,
            subcertificates: base.subcertificates,
            note: Some(format!(
                "reduces exactly to `{}`: {}",
                derived.base_id, derived.note
            )),
        });
    }
    let ClaimOutcome { verdict, subcertificates } = verify_claim(claim)?;
    Ok(Certificate {
        claim_id: claim.id.clone(),
        description: claim.description.clone(),
        verdict,
        subcertificates,
        note: None,
    })
}

/// The exponential claims the dedicated entry point accepts.
const EXPONENTIAL_CLAIMS: [&str; 3] = ["Z20_lower", "Z11_upper", "chernoff_lower"];

/// Verifies one of the registered exponential claims: the kernel
/// `e^(-t)` is replaced by its alternating-series envelope (or a power
/// bound on unbounded tails) in the direction the term's sign requires,
/// which reduces the claim to polynomial positivity.
pub fn verify_exponential_claim(id: &str) -> Result<Certificate, VerifyError> {
    let canonical = match id {
        "Z20_lower" | "Z_{2,0}" | "Z20" => "Z20_lower",
        "Z11_upper" | "Z_{1,1}" | "Z11" => "Z11_upper",
        "chernoff_lower" | "CHERNOFF_lower" => "chernoff_lower",
        other => {
            return if EXPONENTIAL_CLAIMS.contains(&other) {
                verify_claim_by_id(other)
            } else {
                Err(VerifyError::NotAnExponentialClaim(id.to_string()))
            }
        }
    };
    verify_claim_by_id(canonical)
}

/// Verifies the whole registry in order.
pub fn verify_all() -> Result<Vec<Certificate>, VerifyError> {
    builtin_claims().iter().map(certify).collect()
}

/// Parses a user claim file: a JSON array of claims with terms
/// `[coeff, x_pow, f_pow]` (coefficient grammar: rational constants,
/// `pi`, `pi^k`, `s`, products and sums thereof) and per-subinterval
/// strategies.
pub fn parse_claim_file(text: &str) -> Result<Vec<Claim>, VerifyError> {
    let spec: Vec<ClaimSpec> = serde_json::from_str(text)
        .map_err(|e| VerifyError::BadClaimFile(e.to_string()))?;
    spec.into_iter().map(Claim::try_from).collect()
}

#[derive(serde::Deserialize)]
struct ClaimSpec {
    id: String,
    #[serde(default)]
    description: String,
    terms: Vec<(String, u32, u32)>,
    subclaims: Vec<SubSpec>,
    #[serde(default = "default_precision")]
    precision: u32,
}

fn default_precision() -> u32 {
    1
}

#[derive(serde::Deserialize)]
struct SubSpec {
    lo: String,
    #[serde(default)]
    hi: Option<String>,
    strategy: StrategySpec,
}

#[derive(serde::Deserialize)]
#[serde(rename_all = "snake_case")]
enum StrategySpec {
    TaylorRational { order: usize, precision: u32 },
    TaylorSymbolic { order: usize },
    Convergent { even_index: usize },
}

impl TryFrom<ClaimSpec> for Claim {
    type Error = VerifyError;

    fn try_from(spec: ClaimSpec) -> Result<Self, VerifyError> {
        let mut terms = Vec::new();
        for (coeff, x_pow, f_pow) in &spec.terms {
            terms.push(term(parse_const_expr(coeff)?, *x_pow, *f_pow));
        }
        let mut subclaims = Vec::new();
        for sub in &spec.subclaims {
            let lo = parse_rational(&sub.lo)
                .map_err(|e| VerifyError::BadClaimFile(e.to_string()))?;
            let hi = match &sub.hi {
                Some(h) => Some(
                    parse_rational(h).map_err(|e| VerifyError::BadClaimFile(e.to_string()))?,
                ),
                None => None,
            };
            let envelope = match &sub.strategy {
                StrategySpec::TaylorRational { order, precision } => {
                    FEnvelope::TaylorRational { order: *order, precision: *precision }
                }
                StrategySpec::TaylorSymbolic { order } => {
                    FEnvelope::TaylorSymbolic { order: *order }
                }
                StrategySpec::Convergent { even_index } => {
                    FEnvelope::Convergent { even_index: *even_index }
                }
            };
            subclaims.push(SubStrategy { lo, hi, envelope, exp_envelope: None });
        }
        Ok(Claim {
            id: spec.id,
            description: spec.description,
            expression: MillsExpression::new(terms),
            exp_kernel: None,
            subclaims,
            constant_precision: spec.precision,
            derived_from: None,
        })
    }
}

/// Grammar: sum of signed products `q * pi^k * s`, each factor optional.
fn parse_const_expr(text: &str) -> Result<ConstExpr, VerifyError> {
    let bad = |m: &str| VerifyError::BadClaimFile(format!("coefficient `{text}`: {m}"));
    let cleaned = text.replace(' ', "");
    if cleaned.is_empty() {
        return Err(bad("empty"));
    }
    let mut acc = ConstExpr::zero();
    // split into signed chunks
    let mut chunks: Vec<(i32, String)> = Vec::new();
    let mut current = String::new();
    let mut sign = 1;
    for (i, ch) in cleaned.chars().enumerate() {
        match ch {
            '+' | '-' if i > 0 && !matches!(cleaned.as_bytes()[i - 1], b'^' | b'*') => {
                if !current.is_empty() {
                    chunks.push((sign, std::mem::take(&mut current)));
                }
                sign = if ch == '-' { -1 } else { 1 };
            }
            '-' => sign = -sign,
            '+' => {}
            _ => current.push(ch),
        }
    }
    if !current.is_empty() {
        chunks.push((sign, current));
    }
    for (sign, chunk) in chunks {
        let mut factor = ConstExpr::rational(rat_int(sign as i64));
        for part in chunk.split('*') {
            if part == "pi" {
                factor = factor * ConstExpr::pi();
            } else if let Some(exp) = part.strip_prefix("pi^") {
                let k: i32 = exp.parse().map_err(|_| bad("bad pi power"))?;
                factor = factor * ConstExpr::monomial(Rational::one(), k, false);
            } else if part == "s" || part == "sqrt(pi/2)" {
                factor = factor * ConstExpr::sqrt_pi_over_2();
            } else if part == "sqrt(2pi)" || part == "sqrt(2*pi)" {
                factor = factor * ConstExpr::sqrt_2pi();
            } else {
                let q = parse_rational(part).map_err(|_| bad("bad factor"))?;
                factor = factor * ConstExpr::rational(q);
            }
        }
        acc = acc + factor;
    }
    Ok(acc)
}
