//! Integrals of powers of Hermite densities, ∫ ρ(x)^p dx, and of powers of
//! the Airy function.
//!
//! Panels break at the zeros of ψ_n so that |ψ_n|^{2p} is smooth inside each
//! one, and every panel is mapped through a quintic smoothstep so the
//! |x − x₀|^{2p} behaviour at its ends is flattened out. On each panel a
//! 16-point Gauss–Legendre estimate is checked against an 8-point one and the
//! panel is bisected until they agree. Everything is accumulated as logs.

mod airy_constant;
mod gauss;
mod moments;
mod panels;

pub use airy_constant::{airy_constant, airy_power_integral, AIRY_P_MIN};
pub use gauss::{smoothstep, UnitRule};
pub use moments::{
    entropic_moment, entropic_moments, entropic_moments_with_order, zone_integrals, ZoneIntegrals,
    MAX_QUADRATURE_DEGREE,
};
pub use panels::{hermite_zeros, plan_panels, PanelPlan, NODES_PER_PANEL};

use crate::scalar::{log_add_exp, Real};

/// Default relative tolerance for the quadratures.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Maximum number of panels (initial plus bisections) per integral.
pub const PANEL_BUDGET: usize = 1_000_000;

/// A positive integral stored as its natural log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogMoment<T> {
    pub log_value: T,
    pub rel_error_estimate: T,
}

impl<T: Real> LogMoment<T> {
    pub fn new(log_value: T, rel_error_estimate: T) -> Self {
        LogMoment {
            log_value,
            rel_error_estimate,
        }
    }

    /// The empty integral (log −∞).
    pub fn zero() -> Self {
        LogMoment::new(T::neg_infinity(), T::zero())
    }

    pub fn value(&self) -> T {
        self.log_value.exp()
    }

    /// Sum of two integrals; relative errors are combined with the weights
    /// of the two parts.
    pub fn add(&self, other: &Self) -> Self {
        let log_value = log_add_exp(self.log_value, other.log_value);
        if log_value == T::neg_infinity() {
            return LogMoment::zero();
        }
        let wa = (self.log_value - log_value).exp();
        let wb = (other.log_value - log_value).exp();
        LogMoment::new(
            log_value,
            wa * self.rel_error_estimate + wb * other.rel_error_estimate,
        )
    }

    /// Multiplies the integral by e^{shift}.
    pub fn scale_log(&self, shift: T) -> Self {
        LogMoment::new(self.log_value + shift, self.rel_error_estimate)
    }
}

/// Sum of several integrals in the given order.
pub fn log_sum<T: Real>(parts: &[LogMoment<T>]) -> LogMoment<T> {
    parts.iter().fold(LogMoment::zero(), |acc, m| acc.add(m))
}

/// Checks a tolerance lies in the supported open range (1e−12, 1e−2).
pub(crate) fn check_tol<T: Real>(routine: &'static str, tol: T) -> crate::Result<()> {
    if !(tol > T::lit(1e-12) && tol < T::lit(1e-2)) {
        return Err(crate::Error::domain(
            routine,
            format!("tolerance must lie in (1e-12, 1e-2), got {tol}"),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_is_log_sum_exp() {
        let a = LogMoment::new(2.0f64.ln(), 1e-10);
        let b = LogMoment::new(3.0f64.ln(), 3e-10);
        let s = a.add(&b);
        assert!((s.value() - 5.0).abs() < 1e-14);
        assert!((s.rel_error_estimate - (0.4 * 1e-10 + 0.6 * 3e-10)).abs() < 1e-24);
        assert_eq!(a.add(&LogMoment::zero()), a);
    }
}
