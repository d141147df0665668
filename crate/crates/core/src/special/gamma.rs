use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::CertifiedValue;

/// Stirling correction coefficients B_{2k} / (2k (2k-1)), k = 1..=9.
const STIRLING: [f64; 9] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
];

/// Below this the argument is shifted upward before Stirling is applied.
const STIRLING_MIN: f64 = 10.0;

/// ln Γ(x) for x > 0.
///
/// Stirling series with eight Bernoulli corrections for x ≥ 10; smaller
/// arguments are lifted with Γ(x) = Γ(x + k) / (x (x+1) ... (x+k-1)).
pub fn ln_gamma<T: Real>(x: T) -> Result<CertifiedValue<T>> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain(
            "ln_gamma",
            format!("argument must be positive and finite, got {x}"),
        ));
    }
    let eps = T::epsilon();
    let lower = T::lit(STIRLING_MIN);

    let mut shifted = x;
    let mut product = T::one();
    let mut log_product = T::zero();
    while shifted < lower {
        product = product * shifted;
        shifted = shifted + T::one();
    }
    if product != T::one() {
        log_product = product.ln();
    }

    let (stirling, trunc) = stirling_ln_gamma(shifted);
    let value = stirling - log_product;
    let rounding = T::lit(8.0) * eps * (stirling.abs() + shifted + log_product.abs() + T::one());
    Ok(CertifiedValue::new(value, T::lit(10.0) * trunc + rounding))
}

/// Stirling series; returns (value, magnitude of the first omitted term).
fn stirling_ln_gamma<T: Real>(x: T) -> (T, T) {
    let half = T::lit(0.5);
    let half_ln_two_pi = T::lit(0.918_938_533_204_672_8);
    let inv = x.recip();
    let inv2 = inv * inv;
    let mut corr = T::zero();
    let mut power = inv;
    let last = STIRLING.len() - 1;
    for &c in &STIRLING[..last] {
        corr = corr + T::lit(c) * power;
        power = power * inv2;
    }
    let omitted = (T::lit(STIRLING[last]) * power).abs();
    ((x - half) * x.ln() - x + half_ln_two_pi + corr, omitted)
}

/// ln n! for non-negative integers, via ln Γ(n + 1).
pub fn ln_factorial<T: Real>(n: u64) -> T {
    // n + 1 > 0 always, so the domain check cannot fire
    ln_gamma(T::from_u64_lossy(n) + T::one())
        .map(|v| v.value)
        .unwrap_or_else(|_| T::nan())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let one = ln_gamma(1.0f64).unwrap();
        assert!(one.value.abs() < 1e-14);
        let half = ln_gamma(0.5f64).unwrap();
        assert!((half.value - 0.572_364_942_924_700_1).abs() < 1e-14);
        // Γ(7/2) = 15√π/8
        let v = ln_gamma(3.5f64).unwrap();
        assert!((v.value - 1.200_973_602_347_074_2).abs() < 1e-14);
        assert!(v.abs_error_bound < 1e-13);
    }

    #[test]
    fn factorials() {
        let mut fact = 1.0f64;
        for k in 1..=20u64 {
            fact *= k as f64;
            let got: f64 = ln_factorial(k);
            assert!((got - fact.ln()).abs() < 1e-13 * fact.ln().max(1.0), "k={k}");
        }
        let zero: f64 = ln_factorial(0);
        assert!(zero.abs() < 1e-14);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(matches!(ln_gamma(0.0f64), Err(Error::Domain { .. })));
        assert!(matches!(ln_gamma(-2.5f64), Err(Error::Domain { .. })));
        assert!(ln_gamma(f64::NAN).is_err());
        assert!(ln_gamma(f64::INFINITY).is_err());
    }

    #[test]
    fn f32_is_usable() {
        let v = ln_gamma(3.5f32).unwrap();
        assert!((v.value - 1.200_973_6).abs() < 1e-5);
    }
}
