//! Hermite polynomials weighted by e^{-x²/2}, evaluated without overflow.
//!
//! Values are carried as (sign, ln|·|). The orthonormal functions are produced
//! by the normalized three-term recurrence
//!
//! ```text
//! q_{k+1} = sqrt(2/(k+1)) x q_k - sqrt(k/(k+1)) q_{k-1},   q_0 = π^{-1/4}
//! ```
//!
//! with an exact power-of-two rescale whenever |q_k| grows past a threshold.
//! The Gaussian weight is attached in log space at the very end.

mod asymptotic;
mod zones;

pub use asymptotic::{
    asymptotic_envelope, envelope_relative_error, eval_asymptotic, windowed_envelope_error,
};
pub use zones::{classify_zone, Zone, ZoneMap, DEFAULT_M_CUT, DEFAULT_THETA};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::ln_factorial;

/// Largest supported polynomial degree.
pub const MAX_DEGREE: u64 = 100_000;

/// Which Hermite family a value refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// Standard H_n, with ∫ H_n² e^{-x²} dx = h_n = √π n! 2ⁿ.
    Orthogonal,
    /// H_n / √h_n; the weighted function is the oscillator eigenfunction ψ_n.
    Orthonormal,
}

/// Sign of a value in log-sign form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Real>(x: T) -> Self {
        if x > T::zero() {
            Sign::Positive
        } else if x < T::zero() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_scalar<T: Real>(self) -> T {
        match self {
            Sign::Negative => -T::one(),
            Sign::Zero => T::zero(),
            Sign::Positive => T::one(),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// H_n(x) e^{-x²/2} or ψ_n(x) in log-sign form.
///
/// `sign == Sign::Zero` exactly when `log_magnitude` is `-∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedHermiteValue<T> {
    pub degree: u64,
    pub log_magnitude: T,
    pub sign: Sign,
    pub normalization: Normalization,
}

impl<T: Real> WeightedHermiteValue<T> {
    fn from_parts(degree: u64, sign: Sign, log_magnitude: T, normalization: Normalization) -> Self {
        let (sign, log_magnitude) = if sign == Sign::Zero || log_magnitude == T::neg_infinity() {
            (Sign::Zero, T::neg_infinity())
        } else {
            (sign, log_magnitude)
        };
        WeightedHermiteValue {
            degree,
            log_magnitude,
            sign,
            normalization,
        }
    }

    /// Plain value; overflows to ±∞ or underflows to 0 when out of range.
    pub fn value(&self) -> T {
        match self.sign {
            Sign::Zero => T::zero(),
            s => s.as_scalar::<T>() * self.log_magnitude.exp(),
        }
    }

    /// Re-expresses the value in another normalization via ½ ln h_n.
    pub fn to_normalization(self, target: Normalization) -> Self {
        if target == self.normalization || self.sign == Sign::Zero {
            return WeightedHermiteValue {
                normalization: target,
                ..self
            };
        }
        let half = half_ln_norm::<T>(self.degree);
        let log_magnitude = match target {
            Normalization::Orthonormal => self.log_magnitude - half,
            Normalization::Orthogonal => self.log_magnitude + half,
        };
        WeightedHermiteValue {
            log_magnitude,
            normalization: target,
            ..self
        }
    }
}

/// A density value ρ ≥ 0 stored as ln ρ (`-∞` for an exact zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityValue<T> {
    pub log_value: T,
    pub normalization: Normalization,
}

impl<T: Real> DensityValue<T> {
    pub fn value(&self) -> T {
        self.log_value.exp()
    }
}

/// ln h_n = ½ ln π + ln n! + n ln 2.
pub fn ln_norm<T: Real>(n: u64) -> T {
    T::lit(0.5) * T::PI().ln() + ln_factorial::<T>(n) + T::from_u64_lossy(n) * T::LN_2()
}

/// ½ ln h_n, the log-shift between the two normalizations.
pub fn half_ln_norm<T: Real>(n: u64) -> T {
    T::lit(0.5) * ln_norm::<T>(n)
}

fn check_degree(n: u64) -> Result<()> {
    if n > MAX_DEGREE {
        return Err(Error::domain(
            "eval_weighted",
            format!("degree {n} exceeds the supported cap {MAX_DEGREE}"),
        ));
    }
    Ok(())
}

/// Reusable evaluator for a fixed degree; keeps the recurrence coefficients
/// so repeated evaluation (quadrature) costs two multiply-adds per step.
#[derive(Debug, Clone)]
pub struct HermiteEvaluator<T> {
    degree: u64,
    // (sqrt(2/(k+1)), sqrt(k/(k+1))) for k = 1..degree-1
    coeffs: Vec<(T, T)>,
    half_ln_norm: T,
    threshold: T,
    inv_threshold: T,
    ln_threshold: T,
}

impl<T: Real> HermiteEvaluator<T> {
    pub fn new(degree: u64) -> Result<Self> {
        check_degree(degree)?;
        let coeffs = (1..degree)
            .map(|k| {
                let kf = T::from_u64_lossy(k);
                let k1 = kf + T::one();
                ((T::lit(2.0) / k1).sqrt(), (kf / k1).sqrt())
            })
            .collect();
        let max_exp = T::max_value().log2().floor().to_i32().unwrap_or(127);
        let bits = max_exp / 4;
        let two = T::lit(2.0);
        Ok(HermiteEvaluator {
            degree,
            coeffs,
            half_ln_norm: half_ln_norm::<T>(degree),
            threshold: two.powi(bits),
            inv_threshold: two.powi(-bits),
            ln_threshold: T::from_i32(bits).unwrap_or_else(T::zero) * T::LN_2(),
        })
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// ln ψ_n(x)² (orthonormal) for many points at once, written to `out`.
    ///
    /// Runs the recurrence for blocks of points in lockstep so it vectorizes;
    /// the overflow check is done every 4 steps, which is safe because one
    /// step grows |q| by at most √2|x| + 1 (points with |x| > 1000 take the
    /// scalar path).
    pub fn log_density_batch(&self, xs: &[T], out: &mut [T]) {
        const LANES: usize = 8;
        assert_eq!(xs.len(), out.len());
        let q0 = T::PI().powf(T::lit(-0.25));
        let sqrt2 = T::lit(2.0).sqrt();
        for (xc, oc) in xs.chunks(LANES).zip(out.chunks_mut(LANES)) {
            if self.degree == 0 || xc.iter().any(|x| !(x.abs() <= T::lit(1e3))) {
                for (&x, o) in xc.iter().zip(oc.iter_mut()) {
                    let (_, lp) = self.orthonormal_polynomial(x);
                    *o = T::lit(2.0) * (lp - T::lit(0.5) * x * x);
                }
                continue;
            }
            let mut x = [T::zero(); LANES];
            x[..xc.len()].copy_from_slice(xc);
            let mut prev = [q0; LANES];
            let mut cur = [T::zero(); LANES];
            let mut scale = [T::zero(); LANES];
            for j in 0..LANES {
                cur[j] = sqrt2 * x[j] * q0;
            }
            for (step, &(a, b)) in self.coeffs.iter().enumerate() {
                for j in 0..LANES {
                    let next = a * x[j] * cur[j] - b * prev[j];
                    prev[j] = cur[j];
                    cur[j] = next;
                }
                if step % 4 == 3 {
                    for j in 0..LANES {
                        if cur[j].abs() > self.threshold {
                            cur[j] = cur[j] * self.inv_threshold;
                            prev[j] = prev[j] * self.inv_threshold;
                            scale[j] = scale[j] + self.ln_threshold;
                        }
                    }
                }
            }
            for (j, o) in oc.iter_mut().enumerate() {
                let c = cur[j].abs();
                *o = if c == T::zero() {
                    T::neg_infinity()
                } else {
                    T::lit(2.0) * (c.ln() + scale[j] - T::lit(0.5) * x[j] * x[j])
                };
            }
        }
    }

    /// (q_n, q_{n-1}, ln s): the orthonormal polynomials of degree n and
    /// n − 1 divided by the common factor s = e^{ln s}.
    fn scaled_recurrence(&self, x: T) -> (T, T, T) {
        let q0 = T::PI().powf(T::lit(-0.25));
        if self.degree == 0 {
            return (q0, T::zero(), T::zero());
        }
        let mut prev = q0;
        let mut cur = T::lit(2.0).sqrt() * x * q0;
        let mut scale = T::zero();
        for &(a, b) in &self.coeffs {
            let next = a * x * cur - b * prev;
            prev = cur;
            cur = next;
            if cur.abs() > self.threshold {
                cur = cur * self.inv_threshold;
                prev = prev * self.inv_threshold;
                scale = scale + self.ln_threshold;
            }
        }
        (cur, prev, scale)
    }

    /// Sign of ψ_n(x) together with the Newton step q_n / q_n' for the
    /// orthonormal polynomial (q_n' = sqrt(2n) q_{n-1}). The step is infinite
    /// where the derivative vanishes.
    pub fn sign_and_newton_step(&self, x: T) -> (Sign, T) {
        let (cur, prev, _) = self.scaled_recurrence(x);
        let slope = (T::lit(2.0) * T::from_u64_lossy(self.degree)).sqrt() * prev;
        (Sign::of(cur), cur / slope)
    }

    /// Sign of ψ_n(x) (the weight is positive).
    pub fn sign_at(&self, x: T) -> Sign {
        Sign::of(self.scaled_recurrence(x).0)
    }

    /// Orthonormal polynomial (without weight) as (sign, ln|·|).
    fn orthonormal_polynomial(&self, x: T) -> (Sign, T) {
        let (cur, _, scale) = self.scaled_recurrence(x);
        let sign = Sign::of(cur);
        if sign == Sign::Zero {
            (sign, T::neg_infinity())
        } else {
            (sign, cur.abs().ln() + scale)
        }
    }

    pub fn eval(&self, x: T, normalization: Normalization) -> Result<WeightedHermiteValue<T>> {
        if !x.is_finite() {
            return Err(Error::domain("eval_weighted", format!("x must be finite, got {x}")));
        }
        let (sign, log_poly) = self.orthonormal_polynomial(x);
        let mut log_magnitude = log_poly - T::lit(0.5) * x * x;
        if normalization == Normalization::Orthogonal {
            log_magnitude = log_magnitude + self.half_ln_norm;
        }
        Ok(WeightedHermiteValue::from_parts(
            self.degree,
            sign,
            log_magnitude,
            normalization,
        ))
    }

    /// ln ρ(x) where ρ is the squared weighted function.
    pub fn log_density(&self, x: T, normalization: Normalization) -> Result<T> {
        Ok(T::lit(2.0) * self.eval(x, normalization)?.log_magnitude)
    }
}

/// H_n(x) e^{-x²/2} (Orthogonal) or ψ_n(x) (Orthonormal) in log-sign form.
pub fn eval_weighted<T: Real>(
    n: u64,
    x: T,
    normalization: Normalization,
) -> Result<WeightedHermiteValue<T>> {
    HermiteEvaluator::new(n)?.eval(x, normalization)
}

/// ρ_n(x) = e^{-x²} H_n(x)² or ρ̃_n(x) = ψ_n(x)², as a log value.
pub fn density<T: Real>(n: u64, x: T, normalization: Normalization) -> Result<DensityValue<T>> {
    let w = eval_weighted(n, x, normalization)?;
    Ok(DensityValue {
        log_value: T::lit(2.0) * w.log_magnitude,
        normalization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const INV_PI_QUARTER: f64 = 0.751_125_544_464_942_5;

    #[test]
    fn low_degree_closed_forms() {
        let v = eval_weighted(0, 0.0f64, Normalization::Orthonormal).unwrap();
        assert_eq!(v.sign, Sign::Positive);
        assert!((v.value() - INV_PI_QUARTER).abs() < 1e-15);

        let v = eval_weighted(1, 1.0f64, Normalization::Orthonormal).unwrap();
        assert!((v.value() - 0.644_288_365_113_475_2).abs() < 1e-15);

        // H_3(2) = 8*8 - 12*2 = 40
        let v = eval_weighted(3, 2.0f64, Normalization::Orthogonal).unwrap();
        assert!((v.value() - 5.413_411_329_464_508).abs() < 1e-13);
    }

    #[test]
    fn explicit_polynomials_match() {
        // H_4 = 16x^4 - 48x^2 + 12, H_5 = 32x^5 - 160x^3 + 120x
        for &x in &[-2.3f64, -0.7, 0.4, 1.9, 3.1] {
            let h4 = 16.0 * x.powi(4) - 48.0 * x * x + 12.0;
            let h5 = 32.0 * x.powi(5) - 160.0 * x.powi(3) + 120.0 * x;
            let w = (-x * x / 2.0).exp();
            let v4 = eval_weighted(4, x, Normalization::Orthogonal).unwrap().value();
            let v5 = eval_weighted(5, x, Normalization::Orthogonal).unwrap().value();
            assert!((v4 - h4 * w).abs() < 1e-12 * (h4 * w).abs().max(1.0));
            assert!((v5 - h5 * w).abs() < 1e-12 * (h5 * w).abs().max(1.0));
        }
    }

    #[test]
    fn zero_of_odd_degree_at_origin() {
        let v = eval_weighted(1, 0.0f64, Normalization::Orthonormal).unwrap();
        assert_eq!(v.sign, Sign::Zero);
        assert_eq!(v.log_magnitude, f64::NEG_INFINITY);
        let d = density(1, 0.0f64, Normalization::Orthogonal).unwrap();
        assert_eq!(d.value(), 0.0);
    }

    #[test]
    fn ground_state_density() {
        let d = density(0, 0.0f64, Normalization::Orthonormal).unwrap();
        assert!((d.value() - 0.564_189_583_547_756_3).abs() < 1e-15);
    }

    #[test]
    fn huge_values_stay_finite_in_log_space() {
        let v = eval_weighted(10_000, 150.0f64, Normalization::Orthogonal).unwrap();
        assert!(v.log_magnitude.is_finite());
        assert!(v.log_magnitude > 1e4);
        let far = eval_weighted(10_000, 1000.0f64, Normalization::Orthonormal).unwrap();
        assert!(far.log_magnitude < -1e5);
    }

    #[test]
    fn degree_cap() {
        assert!(eval_weighted(MAX_DEGREE + 1, 0.5f64, Normalization::Orthonormal).is_err());
        assert!(eval_weighted(3, f64::NAN, Normalization::Orthonormal).is_err());
    }

    #[test]
    fn conversion_round_trip() {
        let v = eval_weighted(37, 2.2f64, Normalization::Orthogonal).unwrap();
        let back = v
            .to_normalization(Normalization::Orthonormal)
            .to_normalization(Normalization::Orthogonal);
        assert!((back.log_magnitude - v.log_magnitude).abs() < 1e-12);
    }

    #[test]
    fn f32_evaluator_agrees_roughly() {
        let a = eval_weighted(20, 1.3f32, Normalization::Orthonormal).unwrap();
        let b = eval_weighted(20, 1.3f64, Normalization::Orthonormal).unwrap();
        assert_eq!(a.sign, b.sign);
        assert!((a.log_magnitude as f64 - b.log_magnitude).abs() < 1e-4);
    }
}
