//! Dense univariate polynomials.
//!
//! `Polynomial<T>` stores coefficients by ascending degree with a nonzero
//! leading coefficient (the empty list is the zero polynomial). Ring
//! arithmetic is generic over the coefficient type; exact division, gcd and
//! the Sturm machinery live on `Polynomial<Rational>`.

use crate::rational::{rat_int, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Commutative-ring interface for polynomial coefficients, built on the
/// num-traits hierarchy.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
{
    fn from_int(n: i64) -> Self;
}

impl Coeff for Rational {
    fn from_int(n: i64) -> Self {
        rat_int(n)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<T = Rational> {
    coeffs: Vec<T>, // index = degree, last entry nonzero
}

/// Errors from the exact division operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    DivisionByZero,
    GcdOfZeros,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DivisionByZero => write!(f, "division by the zero polynomial"),
            PolyError::GcdOfZeros => write!(f, "gcd of two zero polynomials"),
        }
    }
}

impl std::error::Error for PolyError {}

impl<T: Coeff> Polynomial<T> {
    /// Builds a polynomial from ascending-degree coefficients, trimming
    /// trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    pub fn x() -> Self {
        Polynomial::monomial(T::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn map_coeffs<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn neg(&self) -> Self {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = other.coeffs.get(k);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a.clone() + b.clone(),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Polynomial::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_int(k as i64))
            .collect();
        Polynomial::new(out)
    }

    /// Number of trailing zero coefficients, i.e. the multiplicity of the
    /// root at the origin (zero polynomial gives 0).
    pub fn order_at_origin(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `x^k`; every stripped coefficient must be exactly zero.
    pub fn shift_down(&self, k: usize) -> Self {
        assert!(self.order_at_origin() >= k || self.is_zero());
        Polynomial::new(self.coeffs.iter().skip(k).cloned().collect())
    }
}

impl Polynomial<Rational> {
    /// Builds from integer coefficients by ascending degree.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    /// Euclidean division: `self = q*b + r` with `deg r < deg b`, exact.
    pub fn divmod(&self, b: &Self) -> Result<(Self, Self), PolyError> {
        if b.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let db = b.coeffs.len() - 1;
        let lead_inv = b.coeffs[db].recip();
        let mut rem = self.coeffs.clone();
        let mut quot: Vec<Rational> = Vec::new();
        // each pass cancels the current leading coefficient exactly
        while rem.len() > db && !rem.is_empty() {
            let k = rem.len() - 1 - db;
            let factor = rem.last().unwrap() * &lead_inv;
            for i in 0..=db {
                let delta = &b.coeffs[i] * &factor;
                rem[k + i] -= delta;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if quot.len() < k + 1 {
                quot.resize(k + 1, Rational::zero());
            }
            quot[k] = factor;
        }
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Content of the coefficient list: `gcd(numerators)/lcm(denominators)`,
    /// a positive rational whose removal leaves a primitive integer
    /// polynomial.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            num_gcd = BigInt::one();
        }
        Rational::new(num_gcd, den_lcm)
    }

    /// Primitive part: `self / content`, integer coefficients, leading sign
    /// preserved (only a positive factor is removed).
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let c = self.content().recip();
        self.scale(&c)
    }

    /// Monic greatest common divisor via Euclid. Each remainder is reduced
    /// to its primitive part to control coefficient blowup; only positive
    /// factors are stripped so evaluation signs are unaffected.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r.primitive_part();
        }
        // normalize monic
        let lead = a.leading().cloned().unwrap_or_else(Rational::one);
        Ok(a.scale(&lead.recip()))
    }

    /// Square-free part: `self / gcd(self, self')`, exact.
    pub fn square_free_part(&self) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        if self.degree() == Some(0) {
            return self.clone();
        }
        let g = self.gcd(&self.derivative()).expect("nonzero input");
        if g.degree() == Some(0) {
            return self.clone();
        }
        let (q, r) = self.divmod(&g).expect("gcd divides");
        debug_assert!(r.is_zero());
        q
    }

    /// Sign of the value at `x`: -1, 0 or +1.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Sign as x -> +inf: the sign of the leading coefficient.
    pub fn sign_at_pos_inf(&self) -> i32 {
        match self.leading() {
            None => 0,
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    /// Sign as x -> -inf: leading sign, flipped for odd degree.
    pub fn sign_at_neg_inf(&self) -> i32 {
        let s = self.sign_at_pos_inf();
        match self.degree() {
            Some(d) if d % 2 == 1 => -s,
            _ => s,
        }
    }

    /// Cauchy root bound: every real root lies in `(-M, M)`,
    /// `M = 1 + max |a_i| / |a_n|`.
    pub fn root_bound(&self) -> Rational {
        let Some(lead) = self.leading() else {
            return Rational::one();
        };
        let lead = lead.abs();
        let mut max = Rational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = c.abs() / &lead;
            if q > max {
                max = q;
            }
        }
        max + Rational::one()
    }
}

impl<T: Coeff + fmt::Debug> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.coeffs)
    }
}

impl fmt::Display for Polynomial<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if k > 0 {
                if show_coeff {
                    write!(f, " ")?;
                }
                if k == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{k}")?;
                }
            }
        }
        Ok(())
    }
}


/// Parses the polynomial text format `c_k x^k + ... + c_0` with rational
/// coefficients (`p/q`, integers or finite decimals). Accepts coefficients
/// with or without `*` before `x`, and bare `x^k`, `x`, `-x` terms.
pub fn parse_polynomial_text(input: &str) -> Result<Polynomial<Rational>, String> {
    let cleaned = input.trim();
    if cleaned.is_empty() {
        return Err("empty polynomial".into());
    }
    // split into signed terms
    let mut terms: Vec<(i32, String)> = Vec::new();
    let mut current = String::new();
    let mut sign = 1i32;
    let bytes: Vec<char> = cleaned.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        match ch {
            '+' | '-' if current.trim().is_empty() && terms.is_empty() && i == 0 => {
                if ch == '-' {
                    sign = -sign;
                }
            }
            '+' | '-' if !current.trim().is_empty() && bytes[i - 1] != '^' && bytes[i - 1] != 'e'
                && bytes[i - 1] != 'E' =>
            {
                terms.push((sign, std::mem::take(&mut current)));
                sign = if ch == '-' { -1 } else { 1 };
            }
            '-' => sign = -sign,
            _ => current.push(ch),
        }
        i += 1;
    }
    if !current.trim().is_empty() {
        terms.push((sign, current));
    }
    if terms.is_empty() {
        return Err(format!("no terms in `{input}`"));
    }
    let mut coeffs: Vec<Rational> = Vec::new();
    for (sign, body) in terms {
        let body = body.replace(['*', ' '], "");
        let (coeff_str, power) = match body.find('x') {
            None => (body.as_str(), 0usize),
            Some(ix) => {
                let rest = &body[ix + 1..];
                let power = if rest.is_empty() {
                    1
                } else if let Some(exp) = rest.strip_prefix('^') {
                    exp.parse::<usize>().map_err(|_| format!("bad power `{rest}`"))?
                } else {
                    return Err(format!("unexpected `{rest}` after x"));
                };
                (&body[..ix], power)
            }
        };
        let coeff = if coeff_str.is_empty() {
            Rational::one()
        } else {
            crate::rational::parse_rational(coeff_str).map_err(|e| e.to_string())?
        };
        let coeff = if sign < 0 { -coeff } else { coeff };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, Rational::zero());
        }
        coeffs[power] += coeff;
    }
    Ok(Polynomial::new(coeffs))
}
