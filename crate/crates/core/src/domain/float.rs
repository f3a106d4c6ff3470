use std::cmp::Ordering;

use super::{CoefficientDomain, ZeroClass};
use crate::error::DomainError;

pub const DEFAULT_ZERO_TOLERANCE: f64 = 1e-12;

/// Cross-determinants within `(τ, AMBIGUITY_FACTOR·τ)` of the scale are
/// rejected instead of branched on.
const AMBIGUITY_FACTOR: f64 = 100.0;

/// Double precision reals with a relative zero tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatDomain {
    pub tolerance: f64,
}

impl Default for FloatDomain {
    fn default() -> Self {
        FloatDomain {
            tolerance: DEFAULT_ZERO_TOLERANCE,
        }
    }
}

impl FloatDomain {
    pub fn new(tolerance: f64) -> Self {
        FloatDomain { tolerance }
    }
}

impl CoefficientDomain for FloatDomain {
    type Elem = f64;

    fn zero(&self) -> f64 {
        0.0
    }

    fn one(&self) -> f64 {
        1.0
    }

    fn from_i64(&self, n: i64) -> f64 {
        n as f64
    }

    fn add(&self, a: &f64, b: &f64) -> f64 {
        a + b
    }

    fn sub(&self, a: &f64, b: &f64) -> f64 {
        a - b
    }

    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }

    fn neg(&self, a: &f64) -> f64 {
        -a
    }

    fn is_zero(&self, a: &f64) -> bool {
        a.abs() <= self.tolerance
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn is_field(&self) -> bool {
        true
    }

    fn is_negligible(&self, a: &f64, scale: f64) -> bool {
        a.abs() <= self.tolerance * scale
    }

    /// Largest magnitude in the list, or 1 when everything is below the
    /// absolute tolerance.
    fn list_scale(&self, items: &[f64]) -> f64 {
        let max = items.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if max <= self.tolerance {
            1.0
        } else {
            max
        }
    }

    fn classify_cross(&self, delta: &f64, scale: f64) -> ZeroClass {
        let threshold = self.tolerance * scale;
        let d = delta.abs();
        if d <= threshold {
            ZeroClass::Zero
        } else if d < AMBIGUITY_FACTOR * threshold {
            ZeroClass::Ambiguous {
                value: *delta,
                threshold,
            }
        } else {
            ZeroClass::NonZero
        }
    }

    fn exact_divide(&self, a: &f64, b: &f64) -> Result<f64, DomainError> {
        if *b == 0.0 {
            return Err(DomainError::DivisionByZero);
        }
        Ok(a / b)
    }

    fn magnitude(&self, a: &f64) -> Option<f64> {
        Some(a.abs())
    }

    fn abs(&self, a: &f64) -> Option<f64> {
        Some(a.abs())
    }

    fn cmp_abs(&self, a: &f64, b: &f64) -> Option<Ordering> {
        a.abs().partial_cmp(&b.abs())
    }
}
