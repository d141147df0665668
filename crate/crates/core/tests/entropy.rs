use hermite_renyi::entropy::{renyi_entropy_with, Backend};

fn renyi(n: u64, p: f64, backend: Backend) -> f64 {
    renyi_entropy_with(n, p, 1e-10, backend).unwrap().renyi
}

#[test]
fn backends_meet_at_the_crossover_below_two() {
    for p in [0.5, 1.5] {
        let gap = (renyi(2000, p, Backend::Quadrature) - renyi(2000, p, Backend::Asymptotic)).abs();
        assert!(gap <= 0.05, "p = {p}: {gap}");
    }
}

#[test]
fn backends_meet_at_the_crossover_above_two() {
    let gap = (renyi(2000, 3.0, Backend::Quadrature) - renyi(2000, 3.0, Backend::Asymptotic)).abs();
    assert!(gap <= 0.1, "p = 3: {gap}");
}

#[test]
fn entropy_grows_with_n() {
    for p in [1.5, 2.0, 3.0] {
        let rs: Vec<f64> = [100u64, 200, 400, 800, 1600]
            .iter()
            .map(|&n| renyi(n, p, Backend::Quadrature))
            .collect();
        assert!(rs.windows(2).all(|w| w[1] > w[0]), "p = {p}: {rs:?}");
    }
}

#[test]
fn spreading_length_scales_like_root_n() {
    for p in [0.5, 1.5] {
        let pts: Vec<(f64, f64)> = (0..=16)
            .map(|k| {
                let n = 10f64.powf(4.0 + 0.5 * k as f64).round() as u64;
                let r = renyi_entropy_with(n, p, 1e-10, Backend::Asymptotic).unwrap();
                ((n as f64).ln(), r.spreading_length_log)
            })
            .collect();
        let m = pts.len() as f64;
        let mx = pts.iter().map(|q| q.0).sum::<f64>() / m;
        let my = pts.iter().map(|q| q.1).sum::<f64>() / m;
        let sxy: f64 = pts.iter().map(|q| (q.0 - mx) * (q.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|q| (q.0 - mx).powi(2)).sum();
        let slope = sxy / sxx;
        assert!((slope - 0.5).abs() <= 0.01, "p = {p}: slope {slope}");
    }
}
