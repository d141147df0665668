//! Rényi entropies of highly excited harmonic-oscillator states: Hermite
//! function evaluation, entropic-moment quadrature, large-n asymptotics.
//!
//! Everything numerical is generic over [`Real`] (f32 or f64); the aliases
//! below fix f64.

pub mod asymptotics;
pub mod entropy;
pub mod error;
pub mod figure;
pub mod hermite;
pub mod quadrature;
pub mod scalar;
pub mod special;
pub mod validation;

pub use error::{Error, Result};
pub use scalar::Real;

pub type CertifiedValue64 = special::CertifiedValue<f64>;
pub type WeightedHermiteValue64 = hermite::WeightedHermiteValue<f64>;
pub type ZoneMap64 = hermite::ZoneMap<f64>;
pub type LogMoment64 = quadrature::LogMoment<f64>;
pub type PanelPlan64 = quadrature::PanelPlan<f64>;
pub type ZoneIntegrals64 = quadrature::ZoneIntegrals<f64>;
pub type AsymptoticPrediction64 = asymptotics::AsymptoticPrediction<f64>;
pub type EntropyReport64 = entropy::EntropyReport<f64>;
