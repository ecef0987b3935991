//! Exact symbolic constants: the ring of rational combinations of
//! `pi^k * sqrt(pi/2)^e` with `k` an integer and `e` in `{0, 1}`.
//!
//! Every constant coefficient the proof engine meets lives here:
//! `pi`, `pi^2`, `1/pi`, `sqrt(pi/2)` and `sqrt(2*pi) = 2 sqrt(pi/2)`.
//! The ring is closed under multiplication because
//! `sqrt(pi/2)^2 = pi/2`. Keeping coefficients symbolic until the final
//! directed replacement preserves the exact cancellations the proofs rely
//! on (for instance `2*pi*f(0)^2 - pi^2 = 0`), which per-term rational
//! rounding would destroy.

use crate::constants::{constant_enclosure, ConstantId};
use crate::enclosure::Enclosure;
use crate::polynomial::Coeff;
use crate::rational::{rat, rat_int, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element `sum q_{k,e} pi^k s^e` with `s = sqrt(pi/2)`, `e in {0,1}`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ConstExpr {
    // (pi power, s exponent) -> rational coefficient, zero entries absent
    terms: BTreeMap<(i32, bool), Rational>,
}

impl ConstExpr {
    pub fn rational(q: Rational) -> Self {
        let mut e = ConstExpr::default();
        e.insert((0, false), q);
        e
    }

    pub fn from_int(n: i64) -> Self {
        ConstExpr::rational(rat_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        ConstExpr::rational(rat(n, d))
    }

    /// `pi`
    pub fn pi() -> Self {
        ConstExpr::monomial(Rational::one(), 1, false)
    }

    /// `pi^2`
    pub fn pi_squared() -> Self {
        ConstExpr::monomial(Rational::one(), 2, false)
    }

    /// `s = sqrt(pi/2)`
    pub fn sqrt_pi_over_2() -> Self {
        ConstExpr::monomial(Rational::one(), 0, true)
    }

    /// `sqrt(2*pi) = 2 s`
    pub fn sqrt_2pi() -> Self {
        ConstExpr::monomial(rat_int(2), 0, true)
    }

    pub fn monomial(q: Rational, pi_pow: i32, s: bool) -> Self {
        let mut e = ConstExpr::default();
        e.insert((pi_pow, s), q);
        e
    }

    fn insert(&mut self, key: (i32, bool), q: Rational) {
        if q.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(q);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The exact rational value, when the element is free of symbols.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(q) = self.terms.get(&(0, false)) {
                return Some(q.clone());
            }
        }
        None
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return ConstExpr::default();
        }
        let mut out = ConstExpr::default();
        for (k, c) in &self.terms {
            out.insert(*k, c * q);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ConstExpr::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    /// Enclosure of the value at the given bracket precision.
    pub fn eval_enclosure(&self, precision: u32) -> Enclosure {
        let mut acc = Enclosure::point(Rational::zero());
        if self.terms.is_empty() {
            return acc;
        }
        let pi = constant_enclosure(ConstantId::Pi, precision);
        let s = constant_enclosure(ConstantId::SqrtPiOver2, precision);
        for ((pi_pow, has_s), q) in &self.terms {
            let mut term = Enclosure::point(Rational::one());
            if *pi_pow > 0 {
                term = term.mul(&pi.pow(*pi_pow as u32));
            } else if *pi_pow < 0 {
                let inv = pi.pow(pi_pow.unsigned_abs()).recip().expect("pi > 0");
                term = term.mul(&inv);
            }
            if *has_s {
                term = term.mul(&s);
            }
            acc = acc.add(&term.scale(q));
        }
        acc
    }

    /// The definite sign at the given precision, if the bracket resolves it.
    pub fn definite_sign(&self, precision: u32) -> Option<i32> {
        self.eval_enclosure(precision).definite_sign()
    }

    /// Directed rational replacement: the low endpoint of the bracket, so
    /// that `directed <= value` exactly. Rational elements come back
    /// unchanged.
    pub fn directed_low(&self, precision: u32) -> Rational {
        if let Some(q) = self.as_rational() {
            return q;
        }
        self.eval_enclosure(precision).lo().clone()
    }
}

impl Zero for ConstExpr {
    fn zero() -> Self {
        ConstExpr::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ConstExpr {
    fn one() -> Self {
        ConstExpr::rational(Rational::one())
    }
}

impl Add for ConstExpr {
    type Output = ConstExpr;
    fn add(self, rhs: ConstExpr) -> ConstExpr {
        let mut out = self;
        for (k, q) in rhs.terms {
            out.insert(k, q);
        }
        out
    }
}

impl Sub for ConstExpr {
    type Output = ConstExpr;
    fn sub(self, rhs: ConstExpr) -> ConstExpr {
        self + (-rhs)
    }
}

impl Neg for ConstExpr {
    type Output = ConstExpr;
    fn neg(self) -> ConstExpr {
        let mut out = ConstExpr::default();
        for (k, q) in self.terms {
            out.insert(k, -q);
        }
        out
    }
}

impl Mul for ConstExpr {
    type Output = ConstExpr;
    fn mul(self, rhs: ConstExpr) -> ConstExpr {
        let mut out = ConstExpr::default();
        for ((p1, s1), q1) in &self.terms {
            for ((p2, s2), q2) in &rhs.terms {
                let q = q1 * q2;
                // s^2 = pi/2
                if *s1 && *s2 {
                    out.insert((p1 + p2 + 1, false), q * rat(1, 2));
                } else {
                    out.insert((p1 + p2, s1 ^ s2), q);
                }
            }
        }
        out
    }
}

impl Coeff for ConstExpr {
    fn from_int(n: i64) -> Self {
        ConstExpr::from_int(n)
    }
}

impl From<Rational> for ConstExpr {
    fn from(q: Rational) -> Self {
        ConstExpr::rational(q)
    }
}

impl fmt::Debug for ConstExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ConstExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((pi_pow, has_s), q) in &self.terms {
            let (sign, mag) = if q.is_negative() {
                ("-", -q.clone())
            } else {
                ("+", q.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (*pi_pow == 0 && !has_s) {
                parts.push(format!("{mag}"));
            }
            match pi_pow {
                0 => {}
                1 => parts.push("pi".into()),
                p => parts.push(format!("pi^{p}")),
            }
            if *has_s {
                parts.push("s".into());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
