//! Leading large-n behaviour of the entropic moments, in log space.
//!
//! Input n follows the convention of the classical theorem: the prediction
//! is for W_p[ρ_{n−1}], i.e. polynomial degree n − 1. Use
//! [`degree_to_index`] / [`index_to_degree`] to convert.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::hermite::Normalization;
use crate::quadrature::{airy_constant, DEFAULT_TOL};
use crate::scalar::Real;
use crate::special::{ln_gamma, CertifiedValue};

/// Half-width of the band around p = 2 classified as critical.
pub const REGIME_WIDTH: f64 = 1e-9;

/// Which branch of the large-n asymptotics applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeTag {
    /// p < 2: the oscillatory bulk dominates.
    SubCritical,
    /// p = 2: bulk and turning point contribute equally, with a ln n factor.
    Critical,
    /// p > 2: the Airy transition layer dominates.
    SuperCritical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime<T> {
    pub tag: RegimeTag,
    pub p: T,
}

impl<T: Real> Regime<T> {
    pub fn classify(p: T) -> Result<Self> {
        if !(p > T::zero()) || !p.is_finite() {
            return Err(Error::domain("regime", format!("p must be positive, got {p}")));
        }
        let eps = T::lit(REGIME_WIDTH);
        let two = T::lit(2.0);
        let tag = if p < two - eps {
            RegimeTag::SubCritical
        } else if p > two + eps {
            RegimeTag::SuperCritical
        } else {
            RegimeTag::Critical
        };
        Ok(Regime { tag, p })
    }
}

/// Whether the leading term is complete or only known up to an additive O(1)
/// in log space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Caveat {
    ExactConstant,
    UnknownAdditiveO1,
}

impl Caveat {
    pub fn label(self) -> &'static str {
        match self {
            Caveat::ExactConstant => "exact_constant",
            Caveat::UnknownAdditiveO1 => "unknown_additive_o1",
        }
    }
}

impl fmt::Display for Caveat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticPrediction<T> {
    /// ln of the leading-order moment.
    pub log_leading: T,
    pub regime: Regime<T>,
    pub normalization: Normalization,
    pub caveat: Caveat,
}

/// Paper index n (moment of ρ_{n−1}) for a polynomial degree.
pub fn degree_to_index(degree: u64) -> u64 {
    degree + 1
}

/// Polynomial degree for a paper index n ≥ 1.
pub fn index_to_degree(n: u64) -> Result<u64> {
    n.checked_sub(1)
        .ok_or_else(|| Error::domain("index_to_degree", "index n must be at least 1"))
}

/// c_p = (2/π)^p Γ(p+½)/Γ(p+1) · Γ(1−p/2)/Γ(3/2−p/2) for 0 < p < 2.
pub fn c_constant<T: Real>(p: T) -> Result<CertifiedValue<T>> {
    if !(p > T::zero()) || !p.is_finite() {
        return Err(Error::domain("c_constant", format!("p must be positive, got {p}")));
    }
    let two = T::lit(2.0);
    if p >= two {
        return Err(Error::pole(
            "c_constant",
            format!("Γ(1 − p/2) has a pole at p = 2; c_p is infinite for p = {p} ≥ 2"),
        ));
    }
    let half = T::lit(0.5);
    let g1 = ln_gamma(p + half)?;
    let g2 = ln_gamma(p + T::one())?;
    let g3 = ln_gamma(T::one() - p / two)?;
    let g4 = ln_gamma(T::lit(1.5) - p / two)?;
    let log_c = p * (two / T::PI()).ln() + g1.value - g2.value + g3.value - g4.value;
    let value = log_c.exp();
    let log_err = g1.abs_error_bound + g2.abs_error_bound + g3.abs_error_bound + g4.abs_error_bound
        + T::lit(8.0) * T::epsilon() * (T::one() + log_c.abs());
    Ok(CertifiedValue::new(value, value * log_err))
}

fn airy_memo() -> &'static RwLock<HashMap<u64, CertifiedValue<f64>>> {
    static MEMO: OnceLock<RwLock<HashMap<u64, CertifiedValue<f64>>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// C_p at the default tolerance, memoized per p (computed in f64).
pub fn airy_constant_cached<T: Real>(p: T) -> Result<CertifiedValue<T>> {
    let pf = p.to_f64_lossy();
    let key = pf.to_bits();
    let cached = airy_memo().read().ok().and_then(|m| m.get(&key).copied());
    let c = match cached {
        Some(c) => c,
        None => {
            let c = airy_constant(pf, DEFAULT_TOL)?;
            if let Ok(mut m) = airy_memo().write() {
                // first writer wins so every reader sees the same value
                *m.entry(key).or_insert(c)
            } else {
                c
            }
        }
    };
    Ok(CertifiedValue::new(T::lit(c.value), T::lit(c.abs_error_bound)))
}

/// Leading-order ln W_p[ρ_{n−1}] (Orthogonal) or ln W_p[ρ̃_{n−1}]
/// (Orthonormal).
pub fn predict_moment<T: Real>(
    n: u64,
    p: T,
    normalization: Normalization,
) -> Result<AsymptoticPrediction<T>> {
    if n < 2 {
        return Err(Error::domain("predict_moment", format!("need n ≥ 2, got {n}")));
    }
    let regime = Regime::classify(p)?;
    let nf = T::from_u64_lossy(n);
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let ln_2n = (two * nf).ln();
    let ln_pi = T::PI().ln();
    let (log_leading, caveat) = match (regime.tag, normalization) {
        (RegimeTag::SubCritical, norm) => {
            let ln_c = c_constant(p)?.value.ln();
            let v = match norm {
                Normalization::Orthonormal => ln_c + (T::one() - p) / two * ln_2n,
                Normalization::Orthogonal => {
                    ln_c + p * ln_pi + (p * (nf - T::one()) + half) * ln_2n - p * nf
                }
            };
            (v, Caveat::ExactConstant)
        }
        (RegimeTag::Critical, norm) => {
            let ln_ln_n = nf.ln().ln();
            let v = match norm {
                Normalization::Orthonormal => T::LN_2() - two * ln_pi - half * ln_2n + ln_ln_n,
                Normalization::Orthogonal => {
                    T::LN_2() + (two * nf - T::lit(1.5)) * ln_2n - two * nf + ln_ln_n
                }
            };
            (v, Caveat::UnknownAdditiveO1)
        }
        (RegimeTag::SuperCritical, norm) => {
            let ln_cp = airy_constant_cached(p)?.value.ln();
            let sixth = T::one() / T::lit(6.0);
            let v = match norm {
                Normalization::Orthonormal => {
                    T::LN_2() + ln_cp - p * (two * T::PI()).ln() - (p + T::one()) * sixth * ln_2n
                }
                Normalization::Orthogonal => {
                    T::LN_2() + ln_cp - p * T::LN_2()
                        + (p * (nf - two / T::lit(3.0)) - sixth) * ln_2n
                        - p * nf
                }
            };
            (v, Caveat::ExactConstant)
        }
    };
    Ok(AsymptoticPrediction {
        log_leading,
        regime,
        normalization,
        caveat,
    })
}

/// Leading-order Rényi entropy (1/(1−p)) ln W_p[·] of degree n − 1.
pub fn predict_renyi<T: Real>(n: u64, p: T, normalization: Normalization) -> Result<T> {
    if (p - T::one()).abs() <= T::lit(REGIME_WIDTH) {
        return Err(Error::domain(
            "predict_renyi",
            "p = 1 (Shannon limit) is not supported",
        ));
    }
    let w = predict_moment(n, p, normalization)?;
    Ok(w.log_leading / (T::one() - p))
}
