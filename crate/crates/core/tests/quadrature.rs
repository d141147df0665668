use hermite_renyi::hermite::{Normalization, Zone, ZoneMap};
use hermite_renyi::quadrature::{
    entropic_moment, entropic_moments, entropic_moments_with_order, log_sum, zone_integrals,
    LogMoment, NODES_PER_PANEL,
};
use proptest::prelude::*;

fn moment(log_value: f64) -> LogMoment<f64> {
    LogMoment::new(log_value, 0.0)
}

proptest! {
    #[test]
    fn log_sum_commutes(a in -700.0f64..700.0, b in -700.0f64..700.0) {
        let ab = moment(a).add(&moment(b)).log_value;
        let ba = moment(b).add(&moment(a)).log_value;
        prop_assert!((ab - ba).abs() <= 1e-12 * ab.abs().max(1.0));
    }

    #[test]
    fn log_sum_associates(a in -50.0f64..50.0, b in -50.0f64..50.0, c in -50.0f64..50.0) {
        let left = moment(a).add(&moment(b)).add(&moment(c)).log_value;
        let right = moment(a).add(&moment(b).add(&moment(c))).log_value;
        let all = log_sum(&[moment(c), moment(a), moment(b)]).log_value;
        prop_assert!((left - right).abs() <= 1e-12 * left.abs().max(1.0));
        prop_assert!((left - all).abs() <= 1e-12 * left.abs().max(1.0));
    }

    #[test]
    fn ground_state_closed_form(p in 0.1f64..10.0) {
        let exact = std::f64::consts::PI.powf((1.0 - p) / 2.0) / p.sqrt();
        let w = entropic_moment(0, p, Normalization::Orthonormal, 1e-10).unwrap();
        prop_assert!((w.value() / exact - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn moments_decrease_in_p_for_a_normalised_density_below_one(n in 0u64..40, p in 1.1f64..4.0) {
        // Cramér: ψ_n² ≤ π^{-1/2} < 1, so W_p is strictly decreasing in p
        let lo = entropic_moment(n, p, Normalization::Orthonormal, 1e-9).unwrap();
        let hi = entropic_moment(n, p + 0.5, Normalization::Orthonormal, 1e-9).unwrap();
        prop_assert!(hi.log_value < lo.log_value);
    }
}

#[test]
fn doubling_the_rule_stays_within_estimate() {
    let ps = [0.5f64, 1.5, 2.0, 3.0];
    for n in [100u64, 400, 1600, 6400] {
        let base = entropic_moments(n - 1, &ps, Normalization::Orthonormal, 1e-10).unwrap();
        let fine =
            entropic_moments_with_order(n - 1, &ps, Normalization::Orthonormal, 1e-10, 2 * NODES_PER_PANEL)
                .unwrap();
        for (k, (b, f)) in base.iter().zip(&fine).enumerate() {
            let change = (b.log_value - f.log_value).abs();
            assert!(
                change < b.rel_error_estimate,
                "n = {n}, p = {}: change {change:e} vs estimate {:e}",
                ps[k],
                b.rel_error_estimate
            );
        }
    }
}

#[test]
fn zones_tile_the_integral() {
    for n in [200u64, 2000] {
        let map = ZoneMap::<f64>::with_defaults(n).unwrap();
        for p in [0.5f64, 2.0, 3.0] {
            let z = zone_integrals(n, p, Normalization::Orthonormal, &map, 1e-10).unwrap();
            let whole = entropic_moment(n - 1, p, Normalization::Orthonormal, 1e-10).unwrap();
            let parts: Vec<_> = Zone::ALL.iter().map(|&k| z.get(k)).collect();
            let sum = log_sum(&parts).log_value;
            assert!((sum - whole.log_value).abs() < 1e-9, "n = {n}, p = {p}");
        }
    }
}

#[test]
fn bulk_dominates_below_the_critical_exponent() {
    let n = 2000;
    let map = ZoneMap::<f64>::with_defaults(n).unwrap();
    let z = zone_integrals(n, 0.5, Normalization::Orthonormal, &map, 1e-10).unwrap();
    let c = z.get(Zone::C).value();
    for k in [Zone::B1, Zone::B2, Zone::B3, Zone::A] {
        assert!(c > z.get(k).value(), "{k:?}");
    }
}
