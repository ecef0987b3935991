//! Certified evaluation and computer-assisted proofs for the Mills ratio
//! `f(x) = (1 - Phi(x))/phi(x)` of the standard Gaussian law.
//!
//! The crate provides, entirely over exact rational arithmetic:
//!
//! * guaranteed two-sided enclosures of `f`, its derivatives, the Gaussian
//!   Q-function and the companion error-function ratio ([`oracle`]);
//! * the convergent polynomials `P_n`, `Q_n`, the continued fraction, the
//!   enveloping Taylor polynomials and the asymptotic truncations `J_n`
//!   ([`convergents`], [`taylor`], [`asymptotic`]);
//! * a catalog of classical and recent closed-form bounds of `f` with
//!   measured sharpness ([`bounds`]);
//! * a Sturm-sequence engine over exact rationals ([`polynomial`],
//!   [`sturm`]);
//! * a proof engine that re-verifies the bound inequalities as
//!   machine-checked positivity certificates ([`verifier`]).

pub mod asymptotic;
pub mod bounds;
pub mod constants;
pub mod convergents;
pub mod enclosure;
pub mod oracle;
pub mod polynomial;
pub mod rational;
pub mod sturm;
pub mod symbolic;
pub mod taylor;
pub mod verifier;

pub use constants::{constant_enclosure, exp_enclosure, sqrt_enclosure, ConstantId};
pub use enclosure::Enclosure;
pub use oracle::{mills_enclosure, q_function, MillsQuery};
pub use polynomial::Polynomial;
pub use rational::{parse_rational, Rational};
pub use sturm::{SturmPoint, SturmSequence};
