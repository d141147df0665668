use hermite_renyi::asymptotics::{predict_moment, predict_renyi};
use hermite_renyi::hermite::{ln_norm, Normalization};

#[test]
fn renyi_prediction_increases_with_n() {
    for p in [1.5, 2.0, 3.0] {
        let mut last = f64::NEG_INFINITY;
        for k in 0..=100 {
            let n = 10f64.powf(2.0 + 0.1 * k as f64).round() as u64;
            let r = predict_renyi(n, p, Normalization::Orthonormal).unwrap();
            assert!(r > last, "p = {p}, n = {n}");
            last = r;
        }
    }
}

#[test]
fn normalizations_differ_by_p_ln_norm() {
    for p in [0.5, 3.0] {
        let mut last = f64::INFINITY;
        for n in [10u64, 30, 100, 300, 1000] {
            let og = predict_moment(n, p, Normalization::Orthogonal).unwrap().log_leading;
            let on = predict_moment(n, p, Normalization::Orthonormal).unwrap().log_leading;
            let remainder = (og - on - p * ln_norm::<f64>(n - 1)).abs();
            assert!(remainder < last, "p = {p}, n = {n}: {remainder:e}");
            last = remainder;
        }
    }
}
