use hermite_renyi::special::{airy_ai, airy_ai_asymptotic, airy_ai_series, airy_envelope, ln_gamma};
use proptest::prelude::*;

proptest! {
    #[test]
    fn ln_gamma_recursion(x in 0.5f64..100.0) {
        let d = ln_gamma(x + 1.0).unwrap().value - ln_gamma(x).unwrap().value - x.ln();
        prop_assert!(d.abs() <= 1e-12, "x = {x}: {d:e}");
    }

    #[test]
    fn branches_agree_on_the_negative_overlap(x in -9.0f64..-7.0) {
        let s = airy_ai_series(x).unwrap().value;
        let a = airy_ai_asymptotic(x).unwrap().value;
        prop_assert!((s - a).abs() / airy_envelope(x) <= 1e-9);
    }

    #[test]
    fn branches_agree_on_the_positive_overlap(x in 7.0f64..9.0) {
        let s = airy_ai_series(x).unwrap().value;
        let a = airy_ai_asymptotic(x).unwrap().value;
        prop_assert!(((s - a) / a).abs() <= 1e-9);
    }

    #[test]
    fn certified_bounds_are_finite(x in -20.0f64..5.0) {
        let v = airy_ai(x).unwrap();
        prop_assert!(v.abs_error_bound.is_finite() && v.abs_error_bound >= 0.0);
        prop_assert!(v.abs_error_bound <= 1e-10 * airy_envelope(x.abs().max(1.0)));
    }
}

#[test]
fn gamma_at_half_integers() {
    // Γ(k + ½) = (2k)! √π / (4^k k!)
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let mut exact = sqrt_pi;
    for k in 0..30u32 {
        let x = k as f64 + 0.5;
        let got = ln_gamma(x).unwrap().value;
        assert!((got - exact.ln()).abs() <= 1e-12 * exact.ln().abs().max(1.0), "k = {k}");
        exact *= x;
    }
}

#[test]
fn airy_at_origin() {
    assert!((airy_ai(0.0f64).unwrap().value - 0.355_028_053_887_817_239_26).abs() <= 1e-12);
}
