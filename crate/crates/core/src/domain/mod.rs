//! Coefficient domains the engine is generic over.
//!
//! A domain is a value carrying whatever context its elements need (a float
//! tolerance, a parameter list) and exposing ring operations on them. The
//! engine only needs `+`, `-`, `*`; the optional capabilities (`exact_divide`,
//! magnitudes, content) drive normalization, unit normalization and the
//! oracles.

use std::cmp::Ordering;
use std::fmt;

use crate::error::DomainError;

mod float;
mod multipoly;
mod rational;

pub use float::{FloatDomain, DEFAULT_ZERO_TOLERANCE};
pub use multipoly::{mp_divides, Monomial, MonomialContent, MultiPoly, SymbolicDomain};
pub use rational::{Rational, RationalField};

/// Result of classifying a cross-determinant against zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroClass {
    Zero,
    NonZero,
    /// Too close to the threshold to branch on reliably.
    Ambiguous {
        value: f64,
        threshold: f64,
    },
}

pub trait CoefficientDomain {
    type Elem: Clone + fmt::Debug + fmt::Display + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Exact zero test (absolute, scale 1 for floats).
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Whether arithmetic is exact (rationals, integer polynomials).
    fn is_exact(&self) -> bool {
        true
    }

    /// Whether every non-zero element is invertible.
    fn is_field(&self) -> bool {
        false
    }

    /// Zero test relative to `scale`, the magnitude of the values the element
    /// was computed from. Exact domains ignore the scale.
    fn is_negligible(&self, a: &Self::Elem, _scale: f64) -> bool {
        self.is_zero(a)
    }

    /// Scale used for relative zero tests on a coefficient list.
    fn list_scale(&self, _items: &[Self::Elem]) -> f64 {
        1.0
    }

    /// Decide whether `delta = a·b - c·d` vanishes, where `scale` bounds the
    /// two products.
    fn classify_cross(&self, delta: &Self::Elem, _scale: f64) -> ZeroClass {
        if self.is_zero(delta) {
            ZeroClass::Zero
        } else {
            ZeroClass::NonZero
        }
    }

    /// `a / b`, defined only when the quotient is exact.
    fn exact_divide(&self, _a: &Self::Elem, _b: &Self::Elem) -> Result<Self::Elem, DomainError> {
        Err(DomainError::Unsupported("exact_divide"))
    }

    /// Non-negative real size of an element.
    fn magnitude(&self, _a: &Self::Elem) -> Option<f64> {
        None
    }

    /// |a| as a domain element.
    fn abs(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn cmp_abs(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Ordering> {
        None
    }

    /// Positive common factor of a list; `one` when every entry is zero.
    fn content(&self, _items: &[Self::Elem]) -> Option<Self::Elem> {
        None
    }

    /// Divisor turning a polynomial with these coefficients (ascending, top
    /// entry non-zero) into its canonical associate: the leading coefficient
    /// over fields, the signed content otherwise.
    fn unit_divisor(&self, coeffs: &[Self::Elem]) -> Self::Elem {
        match coeffs.last() {
            Some(lc) if self.is_field() && !self.is_zero(lc) => lc.clone(),
            _ => self.one(),
        }
    }

    fn pow(&self, base: &Self::Elem, exp: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..exp {
            acc = self.mul(&acc, base);
        }
        acc
    }
}
