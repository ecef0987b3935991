//! Rational-endpoint enclosures.
//!
//! An `Enclosure` is an ordered pair of exact rationals guaranteed to
//! contain a real value. Because the endpoints are exact, the ring
//! operations below are outward-conservative with no rounding step: the
//! true result of the operation on any contained reals lies in the result.

use crate::rational::{to_decimal_string, Rational};
use num_traits::{Signed, Zero};
use std::fmt;

/// A closed interval `[lo, hi]` of exact rationals with `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

/// Raised when interval preconditions are violated (inverted endpoints,
/// division through zero, empty intersection).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnclosureError {
    Inverted,
    DividesThroughZero,
    EmptyIntersection,
}

impl fmt::Display for EnclosureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnclosureError::Inverted => write!(f, "enclosure endpoints out of order"),
            EnclosureError::DividesThroughZero => {
                write!(f, "division by an enclosure containing zero")
            }
            EnclosureError::EmptyIntersection => write!(f, "enclosures do not intersect"),
        }
    }
}

impl std::error::Error for EnclosureError {}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, EnclosureError> {
        if lo > hi {
            return Err(EnclosureError::Inverted);
        }
        Ok(Enclosure { lo, hi })
    }

    /// A point enclosure `[x, x]`.
    pub fn point(x: Rational) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_strictly(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    /// `self` is a subset of `other`.
    pub fn subset_of(&self, other: &Enclosure) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// The sign of every contained value, if it is uniform.
    /// `None` means the enclosure straddles zero.
    pub fn definite_sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Enclosure { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> Enclosure {
        if c.is_negative() {
            Enclosure { lo: &self.hi * c, hi: &self.lo * c }
        } else {
            Enclosure { lo: &self.lo * c, hi: &self.hi * c }
        }
    }

    pub fn add_scalar(&self, c: &Rational) -> Enclosure {
        Enclosure { lo: &self.lo + c, hi: &self.hi + c }
    }

    pub fn recip(&self) -> Result<Enclosure, EnclosureError> {
        if !self.lo.is_positive() && !self.hi.is_negative() {
            return Err(EnclosureError::DividesThroughZero);
        }
        Ok(Enclosure { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, other: &Enclosure) -> Result<Enclosure, EnclosureError> {
        Ok(self.mul(&other.recip()?))
    }

    /// Integer power by repeated interval multiplication; `n = 0` gives `[1, 1]`.
    pub fn pow(&self, n: u32) -> Enclosure {
        let mut acc = Enclosure::point(Rational::from_integer(1.into()));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Intersection; both must contain the same real for this to be sound.
    pub fn intersect(&self, other: &Enclosure) -> Result<Enclosure, EnclosureError> {
        let lo = if self.lo >= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi <= other.hi { self.hi.clone() } else { other.hi.clone() };
        if lo > hi {
            return Err(EnclosureError::EmptyIntersection);
        }
        Ok(Enclosure { lo, hi })
    }

    /// Widens both endpoints outward by `pad >= 0`.
    pub fn pad(&self, pad: &Rational) -> Enclosure {
        Enclosure { lo: &self.lo - pad, hi: &self.hi + pad }
    }

    /// Entirely below `other`: every value here < every value there.
    pub fn strictly_below(&self, other: &Enclosure) -> bool {
        self.hi < other.lo
    }

    /// `[lo, hi]` rendered as decimals for humans; exact endpoints unaffected.
    pub fn display_decimal(&self, digits: u32) -> String {
        format!(
            "[{}, {}]",
            to_decimal_string(&self.lo, digits),
            to_decimal_string(&self.hi, digits)
        )
    }
}

// Default Display shows the exact fractions; decimal rendering is opt-in.
impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn enc(a: (i64, i64), b: (i64, i64)) -> Enclosure {
        Enclosure::new(rat(a.0, a.1), rat(b.0, b.1)).unwrap()
    }

    #[test]
    fn ordering_enforced() {
        assert!(Enclosure::new(rat_int(2), rat_int(1)).is_err());
    }

    #[test]
    fn outward_arithmetic() {
        let a = enc((1, 2), (3, 4));
        let b = enc((-1, 3), (1, 3));
        let sum = a.add(&b);
        assert_eq!(sum.lo(), &rat(1, 6));
        assert_eq!(sum.hi(), &rat(13, 12));
        let prod = a.mul(&b);
        assert_eq!(prod.lo(), &rat(-1, 4));
        assert_eq!(prod.hi(), &rat(1, 4));
    }

    #[test]
    fn division_through_zero_rejected() {
        let a = enc((1, 1), (2, 1));
        let b = enc((-1, 1), (1, 1));
        assert!(a.div(&b).is_err());
        let c = enc((1, 2), (1, 1));
        let q = a.div(&c).unwrap();
        assert_eq!(q.lo(), &rat_int(1));
        assert_eq!(q.hi(), &rat_int(4));
    }

    #[test]
    fn intersection_and_signs() {
        let a = enc((1, 4), (3, 4));
        let b = enc((1, 2), (2, 1));
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.lo(), &rat(1, 2));
        assert_eq!(i.hi(), &rat(3, 4));
        assert_eq!(i.definite_sign(), Some(1));
        assert_eq!(enc((-1, 1), (1, 1)).definite_sign(), None);
    }
}
