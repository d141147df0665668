use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::double_word::DoubleWord;
use crate::special::CertifiedValue;

/// |x| at or below which the Maclaurin branch is used.
pub const SERIES_LIMIT: f64 = 8.0;
/// Supported argument range.
pub const DOMAIN_LIMIT: f64 = 1.0e3;

/// Ai(0) and -Ai'(0) as (value, residual) pairs.
const AI0: (f64, f64) = (0.355_028_053_887_817_2, 2.052_336_324_362_12e-17);
const NEG_AIP0: (f64, f64) = (0.258_819_403_792_806_8, -2.522_243_111_610_832e-17);

const SAFETY: f64 = 10.0;
const MAX_SERIES_TERMS: usize = 200;
const MAX_ASYMPTOTIC_TERMS: usize = 60;

/// Airy function Ai(x) for x in [-1000, 1000].
///
/// Maclaurin series (summed in double-word arithmetic) for |x| ≤ 8,
/// asymptotic expansions truncated at their smallest term beyond that.
pub fn airy_ai<T: Real>(x: T) -> Result<CertifiedValue<T>> {
    check_domain(x)?;
    if x.abs() <= T::lit(SERIES_LIMIT) {
        Ok(series_unchecked(x))
    } else {
        Ok(asymptotic_unchecked(x))
    }
}

/// The Maclaurin branch on its own, for any x in the supported range.
/// Accuracy degrades through cancellation once |x| grows past ~10.
pub fn airy_ai_series<T: Real>(x: T) -> Result<CertifiedValue<T>> {
    check_domain(x)?;
    Ok(series_unchecked(x))
}

/// The asymptotic branch on its own. Requires |x| ≥ 4 so the expansions
/// have a usefully small smallest term.
pub fn airy_ai_asymptotic<T: Real>(x: T) -> Result<CertifiedValue<T>> {
    check_domain(x)?;
    if x.abs() < T::lit(4.0) {
        return Err(Error::domain(
            "airy_ai_asymptotic",
            format!("|x| must be at least 4, got {x}"),
        ));
    }
    Ok(asymptotic_unchecked(x))
}

/// Oscillation envelope π^{-1/2} |x|^{-1/4} of Ai on the negative axis.
pub fn airy_envelope<T: Real>(x: T) -> T {
    T::FRAC_2_SQRT_PI() * T::lit(0.5) * x.abs().powf(T::lit(-0.25))
}

fn check_domain<T: Real>(x: T) -> Result<()> {
    if x.is_nan() || x.abs() > T::lit(DOMAIN_LIMIT) {
        return Err(Error::domain(
            "airy_ai",
            format!("argument {x} outside [-1000, 1000]"),
        ));
    }
    Ok(())
}

fn series_unchecked<T: Real>(x: T) -> CertifiedValue<T> {
    let c1 = DoubleWord::<T>::from_f64_pair(AI0.0, AI0.1);
    let c2 = DoubleWord::<T>::from_f64_pair(NEG_AIP0.0, NEG_AIP0.1);
    let xd = DoubleWord::from_scalar(x);
    let cube = xd * xd * xd;

    // f = Σ 3^k (1/3)_k x^{3k} / (3k)!, g = Σ 3^k (2/3)_k x^{3k+1} / (3k+1)!
    let mut tf = DoubleWord::from_scalar(T::one());
    let mut tg = xd;
    let mut f = tf;
    let mut g = tg;
    let mut abs_sum = T::one() + x.abs();
    let tiny = T::epsilon() * T::epsilon();
    let mut next = T::zero();
    for k in 1..=MAX_SERIES_TERMS {
        let kk = T::from_usize_lossy(3 * k);
        tf = (tf * cube).div_scalar((kk - T::one()) * kk);
        tg = (tg * cube).div_scalar(kk * (kk + T::one()));
        f = f + tf;
        g = g + tg;
        let mag = tf.hi.abs() + tg.hi.abs();
        abs_sum = abs_sum + mag;
        next = mag;
        if mag <= tiny * (f.hi.abs() + g.hi.abs()) && k > 2 {
            break;
        }
    }
    let value = (c1 * f - c2 * g).to_scalar();
    // double-word rounding over all terms, plus the final conversion to T
    let rounding = T::lit(16.0) * tiny * abs_sum + T::epsilon() * value.abs();
    let truncation = next;
    CertifiedValue::new(value, T::lit(SAFETY) * (rounding + truncation) + T::min_positive_value())
}

fn asymptotic_unchecked<T: Real>(x: T) -> CertifiedValue<T> {
    let ax = x.abs();
    let zeta = T::lit(2.0 / 3.0) * ax * ax.sqrt();
    let inv_sqrt_pi = T::FRAC_2_SQRT_PI() * T::lit(0.5);
    let quarter = ax.powf(T::lit(-0.25));

    // u_k = (6k-5)(6k-3)(6k-1) / ((2k-1) 216 k) u_{k-1}; terms u_k / ζ^k
    let mut terms: Vec<T> = Vec::with_capacity(MAX_ASYMPTOTIC_TERMS);
    let mut u = T::one();
    let mut t = T::one();
    terms.push(t);
    let mut omitted = T::zero();
    for k in 1..MAX_ASYMPTOTIC_TERMS {
        let kf = T::from_usize_lossy(k);
        let six_k = T::lit(6.0) * kf;
        u = u * (six_k - T::lit(5.0)) * (six_k - T::lit(3.0)) * (six_k - T::one())
            / ((T::lit(2.0) * kf - T::one()) * T::lit(216.0) * kf);
        let next = u / zeta.powi(k as i32);
        if next.abs() >= t.abs() {
            omitted = next.abs();
            break;
        }
        t = next;
        omitted = t.abs();
        if t.abs() < T::epsilon() * T::lit(1e-3) {
            break;
        }
        terms.push(t);
    }

    if x > T::zero() {
        let mut sum = T::zero();
        for (k, &tk) in terms.iter().enumerate().rev() {
            sum = if k % 2 == 0 { sum + tk } else { sum - tk };
        }
        let log_prefactor = -zeta + (T::lit(0.5) * inv_sqrt_pi * quarter).ln();
        let value = (log_prefactor + sum.ln()).exp();
        let rel = omitted + T::lit(4.0) * T::epsilon() * (T::one() + zeta);
        CertifiedValue::new(value, T::lit(SAFETY) * rel * value + T::min_positive_value())
    } else {
        // Ai(-s) = π^{-1/2} s^{-1/4} [sin(ζ + π/4) P - cos(ζ + π/4) Q]
        let mut p = T::zero();
        let mut q = T::zero();
        for (k, &tk) in terms.iter().enumerate().rev() {
            let sign = if (k / 2) % 2 == 0 { T::one() } else { -T::one() };
            if k % 2 == 0 {
                p = p + sign * tk;
            } else {
                q = q + sign * tk;
            }
        }
        let phase = zeta + T::FRAC_PI_4();
        let (s, c) = phase.sin_cos();
        let env = inv_sqrt_pi * quarter;
        let value = env * (s * p - c * q);
        // phase rounding grows with ζ
        let rel = omitted + T::lit(4.0) * T::epsilon() * (T::one() + zeta);
        CertifiedValue::new(value, T::lit(SAFETY) * rel * env)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin() {
        let a = airy_ai(0.0f64).unwrap();
        assert!((a.value - 0.355_028_053_887_817_24).abs() < 1e-16);
        let b = airy_ai(-0.0f64).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn reference_points() {
        // mpmath, 40 digits
        let cases: [(f64, f64); 4] = [
            (-5.0, 0.350_761_009_024_114_32),
            (-7.5, 0.321_775_716_380_647_9),
            (-100.0, 0.176_753_393_239_552_88),
            (-1000.0, 0.055_971_895_773_019_92),
        ];
        for (x, want) in cases {
            let got = airy_ai(x).unwrap();
            let env = airy_envelope(x);
            assert!((got.value - want).abs() <= 1e-10 * env, "x={x}: {} vs {want}", got.value);
            assert!((got.value - want).abs() <= got.abs_error_bound, "bound at x={x}");
        }
        let pos: [(f64, f64); 2] = [(8.0, 4.692_207_616_099_231_6e-8), (30.0, 3.208_217_591_550_495_6e-49)];
        for (x, want) in pos {
            let got = airy_ai(x).unwrap();
            assert!(((got.value - want) / want).abs() < 1e-10, "x={x}");
            assert!((got.value - want).abs() <= got.abs_error_bound);
        }
    }

    #[test]
    fn deep_decay_underflows_gracefully() {
        let a = airy_ai(1000.0f64).unwrap();
        assert!(a.value >= 0.0 && a.value < 1e-280);
        assert!(a.abs_error_bound.is_finite());
    }

    #[test]
    fn domain() {
        assert!(airy_ai(1000.5f64).is_err());
        assert!(airy_ai(-1e4f64).is_err());
        assert!(airy_ai(f64::NAN).is_err());
        assert!(airy_ai_asymptotic(1.0f64).is_err());
    }
}
