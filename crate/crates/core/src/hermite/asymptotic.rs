//! Leading-order regional asymptotics of H_{n-1}(x) e^{-x²/2}.
//!
//! Zone a uses the exponential form, zone c the cosine form with phase
//! (n − ½) arcsin √(1 − x²/2n) − x√(2n − x²)/2 − π/4, and all three b pieces
//! the Airy form with argument −2^{1/3} z / 2, z = 2n / x^{2/3} − x^{4/3}.
//! Near the zone breakpoints the neglected o(1) terms are not controlled.

use crate::error::{Error, Result};
use crate::hermite::{classify_zone, HermiteEvaluator, Normalization, Sign, WeightedHermiteValue, Zone, ZoneMap};
use crate::scalar::Real;
use crate::special::{airy_ai, airy_envelope};

fn check_args<T: Real>(n: u64, x: T, map: &ZoneMap<T>) -> Result<()> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain(
            "eval_asymptotic",
            format!("x must be positive and finite, got {x}"),
        ));
    }
    if n != map.n || n == 0 {
        return Err(Error::Config(format!(
            "zone map built for n = {}, asked for n = {n}",
            map.n
        )));
    }
    Ok(())
}

struct AiryPiece<T> {
    log_prefactor: T,
    argument: T,
}

fn airy_piece<T: Real>(n: T, x: T) -> AiryPiece<T> {
    let two = T::lit(2.0);
    let third = T::one() / T::lit(3.0);
    let x23 = x.powf(two * third);
    let z = two * n / x23 - x23 * x23;
    let argument = -two.cbrt() * z / two;
    // √(2π) 2^{-1/6} x^{n-2/3} e^{x²/4} e^{-x²/2}
    let log_prefactor = T::lit(0.5) * (two * T::PI()).ln() - T::LN_2() / T::lit(6.0)
        + (n - two * third) * x.ln()
        - x * x / T::lit(4.0);
    AiryPiece {
        log_prefactor,
        argument,
    }
}

/// Leading asymptotic value of H_{n−1}(x) e^{−x²/2} (Orthogonal normalization,
/// degree n − 1) using the formula of the zone that contains x.
pub fn eval_asymptotic<T: Real>(n: u64, x: T, map: &ZoneMap<T>) -> Result<WeightedHermiteValue<T>> {
    check_args(n, x, map)?;
    let nf = T::from_u64_lossy(n);
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let two_n = two * nf;
    let x2 = x * x;
    let (sign, log_magnitude) = match classify_zone(map, x) {
        Zone::A => {
            let root = (x2 - two_n).sqrt();
            let log = -half * T::LN_2() + (nf - half) * (x + root).ln()
                - T::lit(0.25) * (x2 - two_n).ln()
                + (x2 - nf - x * root) / two
                - half * x2;
            (Sign::Positive, log)
        }
        Zone::C => {
            let gap = two_n - x2;
            let phase = (nf - half) * (T::one() - x2 / two_n).sqrt().asin()
                - x * gap.sqrt() / two
                - T::FRAC_PI_4();
            let c = phase.cos();
            let log = half * T::LN_2() + (nf - half) * half * two_n.ln() - T::lit(0.25) * gap.ln()
                + (x2 - nf) / two
                - half * x2
                + c.abs().ln();
            (Sign::of(c), log)
        }
        Zone::B1 | Zone::B2 | Zone::B3 => {
            let piece = airy_piece(nf, x);
            let ai = airy_ai(piece.argument)?.value;
            (Sign::of(ai), piece.log_prefactor + ai.abs().ln())
        }
    };
    Ok(WeightedHermiteValue::from_parts(
        n - 1,
        sign,
        log_magnitude,
        Normalization::Orthogonal,
    ))
}

/// ln of the local amplitude against which asymptotic errors are measured:
/// the cosine amplitude in zone c, the value itself in zone a, and in the b
/// zones the Airy prefactor times max(|Ai|, π^{-1/2}(1 + |t|)^{-1/4}) for
/// oscillatory arguments t ≤ 0 (|Ai| for t > 0).
pub fn asymptotic_envelope<T: Real>(n: u64, x: T, map: &ZoneMap<T>) -> Result<T> {
    check_args(n, x, map)?;
    let nf = T::from_u64_lossy(n);
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let two_n = two * nf;
    let x2 = x * x;
    match classify_zone(map, x) {
        Zone::A => Ok(eval_asymptotic(n, x, map)?.log_magnitude),
        Zone::C => Ok(half * T::LN_2() + (nf - half) * half * two_n.ln()
            - T::lit(0.25) * (two_n - x2).ln()
            + (x2 - nf) / two
            - half * x2),
        Zone::B1 | Zone::B2 | Zone::B3 => {
            let piece = airy_piece(nf, x);
            let t = piece.argument;
            let ai = airy_ai(t)?.value.abs();
            let env = if t <= T::zero() {
                ai.max(airy_envelope(T::one() - t))
            } else {
                ai
            };
            Ok(piece.log_prefactor + env.ln())
        }
    }
}

/// |a − b| / envelope for two log-sign values, computed without leaving log
/// space so astronomically large magnitudes are fine.
pub fn envelope_relative_error<T: Real>(
    exact: &WeightedHermiteValue<T>,
    approx: &WeightedHermiteValue<T>,
    log_envelope: T,
) -> T {
    let scaled = |v: &WeightedHermiteValue<T>| match v.sign {
        Sign::Zero => T::zero(),
        s => s.as_scalar::<T>() * (v.log_magnitude - log_envelope).exp(),
    };
    (scaled(exact) - scaled(approx)).abs()
}

/// Largest envelope-relative error of `eval_asymptotic` against the
/// recurrence over one local oscillation period centred on x (`samples`
/// equally spaced points). Pointwise errors depend on where x falls in the
/// phase; the windowed maximum does not.
pub fn windowed_envelope_error<T: Real>(
    n: u64,
    x: T,
    map: &ZoneMap<T>,
    samples: usize,
) -> Result<T> {
    check_args(n, x, map)?;
    let evaluator = HermiteEvaluator::<T>::new(n - 1)?;
    let two_n = T::lit(2.0) * T::from_u64_lossy(n);
    let gap = (two_n - x * x).abs().max(two_n.cbrt());
    let width = T::PI() / gap.sqrt();
    let samples = samples.max(1);
    let mut worst = T::zero();
    for i in 0..samples {
        let offset = if samples == 1 {
            T::zero()
        } else {
            width * (T::from_usize_lossy(i) / T::from_usize_lossy(samples - 1) - T::lit(0.5))
        };
        let xi = x + offset;
        if classify_zone(map, xi) != classify_zone(map, x) || !(xi > T::zero()) {
            continue;
        }
        let exact = evaluator.eval(xi, Normalization::Orthogonal)?;
        let approx = eval_asymptotic(n, xi, map)?;
        let env = asymptotic_envelope(n, xi, map)?;
        worst = worst.max(envelope_relative_error(&exact, &approx, env));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::eval_weighted;

    fn env_error(n: u64, x: f64) -> f64 {
        let map = ZoneMap::<f64>::with_defaults(n).unwrap();
        let exact = eval_weighted(n - 1, x, Normalization::Orthogonal).unwrap();
        let approx = eval_asymptotic(n, x, &map).unwrap();
        let env = asymptotic_envelope(n, x, &map).unwrap();
        envelope_relative_error(&exact, &approx, env)
    }

    #[test]
    fn zone_c_interior() {
        assert!(env_error(1000, 10.0) <= 0.02);
    }

    #[test]
    fn zone_a_interior() {
        assert!(env_error(1000, 50.0) <= 0.01);
    }

    #[test]
    fn zone_b2_center() {
        assert!(env_error(1000, 2000f64.sqrt()) <= 0.05);
    }

    #[test]
    fn rejects_non_positive_x_and_mismatched_map() {
        let map = ZoneMap::<f64>::with_defaults(1000).unwrap();
        assert!(eval_asymptotic(1000, 0.0, &map).is_err());
        assert!(eval_asymptotic(1000, -3.0, &map).is_err());
        assert!(eval_asymptotic(999, 3.0, &map).is_err());
    }

    #[test]
    fn degree_is_shifted() {
        let map = ZoneMap::<f64>::with_defaults(1000).unwrap();
        let v = eval_asymptotic(1000, 10.0, &map).unwrap();
        assert_eq!(v.degree, 999);
        assert_eq!(v.normalization, Normalization::Orthogonal);
    }
}
