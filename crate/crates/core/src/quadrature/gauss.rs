use std::sync::OnceLock;

use crate::scalar::Real;

/// Gauss–Legendre nodes and weights on [-1, 1] for `order` points, computed
/// in f64 by Newton iteration on P_order.
fn legendre_rule(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn rule16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(16))
}

fn rule8() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(8))
}

/// A Gauss–Legendre rule mapped to [0, 1].
#[derive(Debug, Clone)]
pub struct UnitRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> UnitRule<T> {
    pub fn order(order: usize) -> Self {
        let owned;
        let (x, w) = match order {
            16 => rule16(),
            8 => rule8(),
            _ => {
                owned = legendre_rule(order);
                &owned
            }
        };
        UnitRule {
            nodes: x.iter().map(|&v| T::lit(0.5 * (v + 1.0))).collect(),
            weights: w.iter().map(|&v| T::lit(0.5 * v)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Quintic smoothstep u³(10 − 15u + 6u²) and its derivative. Its derivative
/// vanishes to second order at both ends, which tames the |x − x₀|^{2p}
/// behaviour of ρ^p at a panel edge sitting on a zero.
#[inline]
pub fn smoothstep<T: Real>(u: T) -> (T, T) {
    let u2 = u * u;
    let v = T::one() - u;
    let phi = u2 * u * (T::lit(10.0) - T::lit(15.0) * u + T::lit(6.0) * u2);
    let dphi = T::lit(30.0) * u2 * v * v;
    (phi, dphi)
}

/// Nodes and weights (x, w) of `rule` placed on the sub-interval
/// [u_lo, u_hi] of the smoothstep variable for the panel [a, b]:
/// x = a + (b − a) φ(u), w = rule weight × (u_hi − u_lo) × (b − a) φ'(u).
pub(crate) fn mapped_nodes<T: Real>(rule: &UnitRule<T>, a: T, b: T, u_lo: T, u_hi: T) -> Vec<(T, T)> {
    let width = b - a;
    let du = u_hi - u_lo;
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&t, &w)| {
            let (phi, dphi) = smoothstep(u_lo + du * t);
            (a + width * phi, w * du * width * dphi)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let rule = UnitRule::<f64>::order(16);
        assert_eq!(rule.len(), 16);
        for deg in 0..32 {
            let got: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&x, &w)| w * x.powi(deg))
                .sum();
            let want = 1.0 / (deg as f64 + 1.0);
            assert!((got - want).abs() < 1e-14, "degree {deg}");
        }
        let rule8 = UnitRule::<f64>::order(8);
        let s: f64 = rule8.weights.iter().sum();
        assert!((s - 1.0).abs() < 1e-15);
    }

    #[test]
    fn smoothstep_maps_unit_interval() {
        let (a, da) = smoothstep(0.0f64);
        let (b, db) = smoothstep(1.0f64);
        assert_eq!((a, da, b, db), (0.0, 0.0, 1.0, 0.0));
        let (m, _) = smoothstep(0.5f64);
        assert!((m - 0.5).abs() < 1e-15);
    }
}
