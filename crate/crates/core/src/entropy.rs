//! Rényi entropies and spreading lengths of oscillator states ψ_n², choosing
//! between quadrature (small n) and the leading asymptotics (large n).

use std::fmt;

use crate::asymptotics::{degree_to_index, predict_moment, Caveat};
use crate::error::{Error, Result};
use crate::hermite::Normalization;
use crate::quadrature::{entropic_moment, LogMoment};
use crate::scalar::Real;
use crate::special::ln_factorial;

/// Largest degree evaluated by quadrature under [`Backend::Auto`].
pub const CROSSOVER_DEGREE: u64 = 2000;

/// Smallest |p − 1| accepted by [`renyi_entropy`].
pub const SHANNON_EXCLUSION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Quadrature,
    Asymptotic,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Backend selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Backend {
    /// Quadrature up to [`CROSSOVER_DEGREE`], asymptotics beyond.
    #[default]
    Auto,
    Quadrature,
    Asymptotic,
}

impl Backend {
    pub fn method_for(self, n: u64) -> Method {
        match self {
            Backend::Auto if n <= CROSSOVER_DEGREE => Method::Quadrature,
            Backend::Auto => Method::Asymptotic,
            Backend::Quadrature => Method::Quadrature,
            Backend::Asymptotic => Method::Asymptotic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport<T> {
    /// Degree of the state ψ_n.
    pub n: u64,
    pub p: T,
    /// ln W_p[ψ_n²].
    pub w_log: T,
    pub renyi: T,
    /// ln of the Rényi spreading length exp(R_p); equal to `renyi`.
    pub spreading_length_log: T,
    pub method: Method,
    pub caveat: Caveat,
    /// Error estimate for `renyi` (absolute); NaN when the backend gives
    /// no estimate (asymptotics).
    pub error_estimate: T,
}

/// ln W_p[ρ̃_n] from ln W_p[ρ_n]: subtracts p ln h_n with
/// h_n = √π n! 2ⁿ.
pub fn orthogonal_to_oscillator<T: Real>(n: u64, p: T, log_w_orthogonal: T) -> T {
    let ln_h = T::lit(0.5) * T::PI().ln() + ln_factorial::<T>(n) + T::from_u64_lossy(n) * T::LN_2();
    log_w_orthogonal - p * ln_h
}

/// ln W_p[ψ_n²] with the default backend choice.
pub fn oscillator_moment<T: Real>(n: u64, p: T, tol: T) -> Result<LogMoment<T>> {
    Ok(oscillator_moment_with(n, p, tol, Backend::Auto)?.0)
}

/// ln W_p[ψ_n²] together with the method used and the caveat that applies.
/// Asymptotic results carry a NaN relative error.
pub fn oscillator_moment_with<T: Real>(
    n: u64,
    p: T,
    tol: T,
    backend: Backend,
) -> Result<(LogMoment<T>, Method, Caveat)> {
    let method = backend.method_for(n);
    match method {
        Method::Quadrature => {
            let w = entropic_moment(n, p, Normalization::Orthonormal, tol)?;
            Ok((w, method, Caveat::ExactConstant))
        }
        Method::Asymptotic => {
            let pred = predict_moment(degree_to_index(n), p, Normalization::Orthonormal)?;
            Ok((LogMoment::new(pred.log_leading, T::nan()), method, pred.caveat))
        }
    }
}

/// Rényi entropy R_p = ln W_p / (1 − p) of ψ_n² with the default backend.
pub fn renyi_entropy<T: Real>(n: u64, p: T, tol: T) -> Result<EntropyReport<T>> {
    renyi_entropy_with(n, p, tol, Backend::Auto)
}

pub fn renyi_entropy_with<T: Real>(
    n: u64,
    p: T,
    tol: T,
    backend: Backend,
) -> Result<EntropyReport<T>> {
    if !(p > T::zero()) || !p.is_finite() {
        return Err(Error::domain("renyi_entropy", format!("p must be positive, got {p}")));
    }
    if (p - T::one()).abs() <= T::lit(SHANNON_EXCLUSION) {
        return Err(Error::domain(
            "renyi_entropy",
            format!("p = {p} is within {SHANNON_EXCLUSION} of 1 (Shannon limit not supported)"),
        ));
    }
    let (w, method, caveat) = oscillator_moment_with(n, p, tol, backend)?;
    let factor = T::one() / (T::one() - p);
    let renyi = w.log_value * factor;
    Ok(EntropyReport {
        n,
        p,
        w_log: w.log_value,
        renyi,
        spreading_length_log: renyi,
        method,
        caveat,
        error_estimate: w.rel_error_estimate * factor.abs(),
    })
}
