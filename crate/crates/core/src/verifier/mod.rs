//! The proof engine: monotone sandwich substitution, directed constant
//! replacement and Sturm-backed positivity certificates.
//!
//! A claim asserts that an expression `sum c * x^p * f^k` (optionally plus
//! one exponential term `c * x^p * e^(-r x^d)`) is strictly positive on an
//! interval. Verification replaces `f` in positively-signed terms by a
//! certified lower bound and in negatively-signed terms by an upper bound,
//! clears the common positive denominator, replaces the symbolic constants
//! of each collected coefficient by the endpoint of its rational bracket
//! that weakens the expression, and certifies positivity of the resulting
//! rational polynomial with a Sturm sequence.

mod claims;
mod engine;

pub use claims::{
    builtin_claim_ids, builtin_claims, certify, claim_by_id, parse_claim_file, verify_all,
    verify_claim_by_id, verify_exponential_claim,
};
pub use engine::{
    certify_positive, substitute_sandwich, taylor_symbolic, verify_claim, PositivityReport,
    RationalFunction,
};

use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::symbolic::ConstExpr;
use serde::Serialize;

/// One monomial `coeff * x^x_pow * f^f_pow` with a symbolic coefficient.
#[derive(Debug, Clone)]
pub struct MillsTerm {
    pub coeff: ConstExpr,
    pub x_pow: u32,
    pub f_pow: u32,
}

impl MillsTerm {
    pub fn new(coeff: ConstExpr, x_pow: u32, f_pow: u32) -> Self {
        MillsTerm { coeff, x_pow, f_pow }
    }
}

/// A polynomial expression in `x` and the Mills ratio `f`.
#[derive(Debug, Clone, Default)]
pub struct MillsExpression {
    pub terms: Vec<MillsTerm>,
}

impl MillsExpression {
    pub fn new(terms: Vec<MillsTerm>) -> Self {
        MillsExpression { terms }
    }
}

/// The single exponential kernel a claim may carry:
/// `coeff * x^x_pow * e^(-rate * x^arg_power)`.
#[derive(Debug, Clone)]
pub struct ExpKernel {
    pub rate: ConstExpr,
    pub arg_power: u32,
    pub coeff: ConstExpr,
    pub x_pow: u32,
}

/// Which certified sandwich replaces `f` on a subinterval.
#[derive(Debug, Clone)]
pub enum FEnvelope {
    /// `(T_{order,l}, T_{order+1,u})` with the `sqrt(2*pi)` bracket already
    /// substituted at the stated precision; produces the classical printed
    /// polynomials.
    TaylorRational { order: usize, precision: u32 },
    /// Symbolic Taylor pair `(T_order, T_{order+1})`; constants stay exact
    /// until the final directed replacement.
    TaylorSymbolic { order: usize },
    /// Convergent pair `Q_n/P_n < f < Q_{n+1}/P_{n+1}`, `n` even.
    Convergent { even_index: usize },
}

/// How the exponential kernel is replaced on a subinterval.
#[derive(Debug, Clone)]
pub enum ExpEnvelope {
    /// Truncated exponential series `E_m(t) = sum_{k<=m} (-t)^k/k!`;
    /// a lower envelope of `e^(-t)` for odd `m`, an upper one for even `m`.
    Series { order: usize },
    /// `e^(-t) <= m!/t^m`, an upper envelope for `t > 0`.
    PowerUpper { m: u32 },
    /// `e^(-t) >= 0`, the trivial lower envelope for unbounded tails.
    Drop,
}

/// One subinterval of a claim with its substitution strategy.
#[derive(Debug, Clone)]
pub struct SubStrategy {
    pub lo: Rational,
    pub hi: Option<Rational>,
    pub envelope: FEnvelope,
    pub exp_envelope: Option<ExpEnvelope>,
}

/// A registered inequality to verify.
#[derive(Debug, Clone)]
pub struct Claim {
    pub id: String,
    pub description: String,
    pub expression: MillsExpression,
    pub exp_kernel: Option<ExpKernel>,
    pub subclaims: Vec<SubStrategy>,
    /// Bracket precision of the directed constant replacement; 1 selects
    /// the classical convergent fractions.
    pub constant_precision: u32,
    /// A claim that holds by exact algebraic reduction to another claim.
    pub derived_from: Option<DerivedFrom>,
}

#[derive(Debug, Clone)]
pub struct DerivedFrom {
    pub base_id: String,
    pub note: String,
}

/// Outcome of a verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Proved,
    Failed,
    Indeterminate,
}

/// Per-subinterval evidence.
#[derive(Debug, Clone, Serialize)]
pub struct SubCertificate {
    pub interval: (String, String),
    pub envelope: String,
    /// Ascending-degree rational coefficients of the certified polynomial
    /// (after clearing denominators and stripping the power of x that
    /// vanishes at the origin).
    pub polynomial: Vec<String>,
    pub origin_multiplicity: usize,
    pub root_count_inside: usize,
    pub endpoint_signs: (i32, i32),
    pub nearest_external_root: Option<(String, String)>,
    pub verdict: Verdict,
    pub note: Option<String>,
}

/// The full machine-checked record for one claim.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub claim_id: String,
    pub description: String,
    pub verdict: Verdict,
    pub subcertificates: Vec<SubCertificate>,
    pub note: Option<String>,
}

/// Errors raised while building or checking a claim.
#[derive(Debug, Clone, PartialEq)]
pub enum VerifyError {
    IndeterminateCoefficient(String),
    ZeroDenominator(String),
    BadStrategy(String),
    UnknownClaim(String),
    NotAnExponentialClaim(String),
    Sturm(crate::sturm::SturmError),
    BadClaimFile(String),
}

impl std::fmt::Display for VerifyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyError::IndeterminateCoefficient(t) => write!(
                f,
                "coefficient sign indeterminate at the working precision: {t}; \
                 raise the constant precision"
            ),
            VerifyError::ZeroDenominator(s) => write!(f, "denominator vanishes: {s}"),
            VerifyError::BadStrategy(s) => write!(f, "invalid strategy: {s}"),
            VerifyError::UnknownClaim(id) => write!(f, "unknown claim id `{id}`"),
            VerifyError::NotAnExponentialClaim(id) => {
                write!(f, "`{id}` is not a registered exponential claim")
            }
            VerifyError::Sturm(e) => write!(f, "{e}"),
            VerifyError::BadClaimFile(s) => write!(f, "bad claim file: {s}"),
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<crate::sturm::SturmError> for VerifyError {
    fn from(e: crate::sturm::SturmError) -> Self {
        VerifyError::Sturm(e)
    }
}

/// Convenience constructor used throughout the claim registry.
pub fn term(coeff: ConstExpr, x_pow: u32, f_pow: u32) -> MillsTerm {
    MillsTerm::new(coeff, x_pow, f_pow)
}

/// Renders a polynomial's coefficients as exact strings, ascending degree.
pub(crate) fn coeff_strings(p: &Polynomial<Rational>) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}
