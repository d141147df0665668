//! Self-contained special functions: ln Γ on the positive axis and the
//! Airy function Ai on the real line, each returned with an analytic error
//! bound.

mod airy;
mod double_word;
mod gamma;

pub use airy::{airy_ai, airy_ai_asymptotic, airy_ai_series, airy_envelope, DOMAIN_LIMIT, SERIES_LIMIT};
pub use gamma::{ln_factorial, ln_gamma};

use crate::scalar::Real;

/// A value together with a conservative bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedValue<T> {
    pub value: T,
    pub abs_error_bound: T,
}

impl<T: Real> CertifiedValue<T> {
    pub fn new(value: T, abs_error_bound: T) -> Self {
        debug_assert!(abs_error_bound >= T::zero() && abs_error_bound.is_finite());
        CertifiedValue {
            value,
            abs_error_bound,
        }
    }

    /// Error bound divided by |value|; infinite when the value is zero.
    pub fn rel_error_bound(&self) -> T {
        self.abs_error_bound / self.value.abs()
    }

    pub fn contains(&self, truth: T) -> bool {
        (self.value - truth).abs() <= self.abs_error_bound
    }
}
