use hermite_renyi::hermite::{
    eval_weighted, half_ln_norm, windowed_envelope_error, HermiteEvaluator, Normalization, Sign,
    ZoneMap,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn parity(n in 0u64..=200, x in -50.0f64..50.0) {
        let e = HermiteEvaluator::<f64>::new(n).unwrap();
        let a = e.eval(x, Normalization::Orthonormal).unwrap();
        let b = e.eval(-x, Normalization::Orthonormal).unwrap();
        prop_assert_eq!(a.log_magnitude, b.log_magnitude);
        let expected = if n % 2 == 0 { a.sign } else { a.sign.flip() };
        prop_assert_eq!(b.sign, expected);
    }

    #[test]
    fn normalizations_differ_by_half_ln_norm(n in 0u64..=2000, x in -60.0f64..60.0) {
        let on = eval_weighted(n, x, Normalization::Orthonormal).unwrap();
        let og = eval_weighted(n, x, Normalization::Orthogonal).unwrap();
        prop_assert_eq!(on.sign, og.sign);
        if on.sign != Sign::Zero {
            let d = og.log_magnitude - half_ln_norm::<f64>(n) - on.log_magnitude;
            prop_assert!(d.abs() <= 1e-12 * og.log_magnitude.abs().max(1.0));
        }
    }
}

#[test]
fn sign_changes_equal_degree() {
    for n in [5u64, 20, 100] {
        let e = HermiteEvaluator::<f64>::new(n).unwrap();
        let edge = (2.0 * n as f64).sqrt() + 1.0;
        // zeros are at least π/√(2n+1) apart, so this step sees each one once
        let step = 0.2 * std::f64::consts::PI / (2.0 * n as f64 + 1.0).sqrt();
        let mut last = Sign::Zero;
        let mut changes = 0;
        let mut x = -edge;
        while x <= edge {
            let s = e.eval(x, Normalization::Orthonormal).unwrap().sign;
            if s != Sign::Zero {
                if last != Sign::Zero && s != last {
                    changes += 1;
                }
                last = s;
            }
            x += step;
        }
        assert_eq!(changes, n, "degree {n}");
    }
}

#[test]
fn asymptotic_error_shrinks_with_n() {
    let err = |n: u64| {
        let map = ZoneMap::<f64>::with_defaults(n).unwrap();
        windowed_envelope_error(n, 0.5 * (2.0 * n as f64).sqrt(), &map, 33).unwrap()
    };
    let (e500, e4000) = (err(500), err(4000));
    assert!(e4000 < e500, "{e500:e} vs {e4000:e}");
}
