use crate::error::{Error, Result};
use crate::hermite::{HermiteEvaluator, Normalization, Sign, ZoneMap};
use crate::scalar::Real;

/// Gauss–Legendre points per panel for the primary estimate.
pub const NODES_PER_PANEL: usize = 16;

/// Initial subdivision of [0, cut_off] for ∫ ρ_n^p.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelPlan<T> {
    /// Polynomial degree.
    pub n: u64,
    pub p: T,
    pub cut_off: T,
    /// Consecutive panels [a, b] tiling [0, cut_off].
    pub panels: Vec<(T, T)>,
    pub nodes_per_panel: usize,
}

/// Positive zeros of ψ_n in increasing order.
///
/// ψ'' + (2n + 1 − x²) ψ = 0, so by Sturm comparison consecutive zeros are at
/// least π/√(2n+1) apart and all lie below √(2n+1). A scan with a smaller
/// step therefore brackets each zero exactly once; brackets are refined by
/// safeguarded Newton.
pub fn hermite_zeros<T: Real>(n: u64) -> Result<Vec<T>> {
    let evaluator = HermiteEvaluator::<T>::new(n)?;
    zeros_with(&evaluator)
}

pub(crate) fn zeros_with<T: Real>(evaluator: &HermiteEvaluator<T>) -> Result<Vec<T>> {
    let n = evaluator.degree();
    let expected = (n / 2) as usize;
    if expected == 0 {
        return Ok(Vec::new());
    }
    let edge = T::from_u64_lossy(2 * n + 1).sqrt();
    let h = T::lit(0.9) * T::PI() / edge;
    let mut prev_x = if n % 2 == 0 { T::zero() } else { h * T::lit(0.25) };
    let mut prev_sign = evaluator.sign_at(prev_x);
    let mut zeros = Vec::with_capacity(expected);
    let mut k = 1usize;
    while prev_x < edge {
        let x = T::from_usize_lossy(k) * h;
        k += 1;
        if x <= prev_x {
            continue;
        }
        let sign = evaluator.sign_at(x);
        if sign == Sign::Zero {
            zeros.push(x);
            prev_x = x + h * T::lit(0.25);
            prev_sign = evaluator.sign_at(prev_x);
            continue;
        }
        if sign != prev_sign {
            zeros.push(refine(evaluator, prev_x, x, prev_sign));
        }
        prev_x = x;
        prev_sign = sign;
    }
    if zeros.len() != expected {
        return Err(Error::convergence(
            "hermite_zeros",
            format!("found {} positive zeros of ψ_{n}, expected {expected}", zeros.len()),
        ));
    }
    Ok(zeros)
}

fn refine<T: Real>(evaluator: &HermiteEvaluator<T>, mut lo: T, mut hi: T, lo_sign: Sign) -> T {
    let mut x = T::lit(0.5) * (lo + hi);
    for _ in 0..200 {
        let (sign, step) = evaluator.sign_and_newton_step(x);
        if sign == Sign::Zero {
            return x;
        }
        if sign == lo_sign {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - step;
        if !(next > lo && next < hi) {
            next = T::lit(0.5) * (lo + hi);
        }
        let done = (next - x).abs() <= T::lit(2.0) * T::epsilon() * x.abs()
            || hi - lo <= T::lit(4.0) * T::epsilon() * hi;
        x = next;
        if done {
            break;
        }
    }
    x
}

/// ln of a lower bound on ∫ ψ_n^{2p}: ρ ≤ π^{-1/2} < 1 gives ρ^p ≥ ρ for
/// p ≤ 1; for p > 1 Hölder on |x| ≤ L = √(2n+1) + 2 (which carries at least
/// half the mass) gives (1/2)^p (2L)^{1−p}.
pub(crate) fn log_moment_lower_bound<T: Real>(n: u64, p: T) -> T {
    if p <= T::one() {
        return T::zero();
    }
    let l = T::from_u64_lossy(2 * n + 1).sqrt() + T::lit(2.0);
    -p * T::LN_2() + (T::one() - p) * (T::lit(2.0) * l).ln()
}

/// Smallest scanned x ≥ `floor` beyond the turning point at which the tail
/// ∫_x^∞ ρ^p is below (tol/10) × (lower bound on the whole integral).
///
/// For x > √(2n+1) the logarithmic derivative of |ψ_n| is at most
/// −√(x² − 2n − 1) (otherwise ψ_n could not decay), hence
/// ∫_x^∞ ρ^p ≤ ρ(x)^p / (2p √(x² − 2n − 1)).
pub(crate) fn tail_cut_off<T: Real>(
    evaluator: &HermiteEvaluator<T>,
    p: T,
    tol: T,
    floor: T,
) -> Result<T> {
    let n = evaluator.degree();
    let k2 = T::from_u64_lossy(2 * n + 1);
    let step = T::lit(0.25) * T::from_u64_lossy(n + 1).powf(T::lit(-1.0 / 6.0));
    let target = (tol / T::lit(10.0)).ln() + log_moment_lower_bound(n, p);
    let mut x = (k2.sqrt() + step).max(floor);
    for _ in 0..1_000_000 {
        let log_rho = evaluator.log_density(x, Normalization::Orthonormal)?;
        let bound = p * log_rho - (T::lit(2.0) * p * (x * x - k2).sqrt()).ln();
        if bound < target {
            return Ok(x);
        }
        x = x + step;
    }
    Err(Error::convergence(
        "plan_panels",
        format!("tail bound not met for n = {n}, p = {p}"),
    ))
}

/// Half-width band |x² − 2n| ≤ M n^{1/3} around the turning point, in x, and
/// the fixed panel width used inside it.
fn turning_band<T: Real>(n: u64, m_cut: T) -> Option<(T, T, T)> {
    if n == 0 {
        return None;
    }
    let nf = T::from_u64_lossy(n);
    let two_n = T::lit(2.0) * nf;
    let half = m_cut * nf.cbrt();
    let lo = (two_n - half).max(T::zero()).sqrt();
    let hi = (two_n + half).sqrt();
    let width = half / two_n.sqrt() / T::lit(32.0);
    Some((lo, hi, width))
}

/// Builds the panel list for the evaluator's degree. The zone boundaries of
/// `map` (default map when `None`) become breakpoints and the cut-off lies
/// past zone a's start; the largest cut-off over `ps` is used.
pub(crate) fn build_plan<T: Real>(
    evaluator: &HermiteEvaluator<T>,
    ps: &[T],
    tol: T,
    map: Option<&ZoneMap<T>>,
    zeros: &[T],
) -> Result<PanelPlan<T>> {
    let n = evaluator.degree();
    let default_map;
    let map = match map {
        Some(m) => m,
        None => {
            default_map = ZoneMap::with_defaults(n.max(1))?;
            &default_map
        }
    };
    let floor = map.boundaries[4].sqrt() + T::lit(0.5);
    let mut cut_off = floor;
    let mut p_used = ps.first().copied().unwrap_or_else(T::one);
    for &p in ps {
        let c = tail_cut_off(evaluator, p, tol, floor)?;
        if c > cut_off {
            cut_off = c;
            p_used = p;
        }
    }

    let band = turning_band(n, map.m_cut);
    let mut breaks: Vec<T> = Vec::with_capacity(zeros.len() + 8);
    breaks.push(T::zero());
    breaks.extend_from_slice(zeros);
    breaks.extend(map.boundaries[1..].iter().map(|b| b.sqrt()));
    if let Some((lo, hi, _)) = band {
        breaks.push(lo);
        breaks.push(hi);
    }
    breaks.push(cut_off);
    breaks.retain(|&b| b >= T::zero() && b <= cut_off);
    breaks.sort_by(|a, b| a.partial_cmp(b).expect("breakpoints are finite"));
    let mut points: Vec<T> = Vec::with_capacity(breaks.len());
    for b in breaks {
        match points.last() {
            Some(&last) if b - last <= T::lit(4.0) * T::epsilon() * b.max(T::one()) => {}
            _ => points.push(b),
        }
    }
    if let Some(last) = points.last_mut() {
        *last = cut_off;
    }

    let two_n = T::from_u64_lossy(2 * n);
    let turning = two_n.sqrt();
    let mut panels = Vec::with_capacity(points.len() * 2);
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mid = T::lit(0.5) * (a + b);
        let in_band = band.map_or(false, |(lo, hi, _)| mid > lo && mid < hi);
        if in_band {
            let width = band.map(|(_, _, w)| w).unwrap_or_else(T::one);
            split_even(&mut panels, a, b, width);
        } else if n > 0 && b <= turning {
            // half the local wavelength, smallest at the left end
            let width = T::PI() / (two_n - a * a).sqrt();
            split_even(&mut panels, a, b, width);
        } else {
            let start = band.map(|(_, _, w)| w).unwrap_or_else(|| T::lit(0.25));
            split_geometric(&mut panels, a, b, start);
        }
    }
    Ok(PanelPlan {
        n,
        p: p_used,
        cut_off,
        panels,
        nodes_per_panel: NODES_PER_PANEL,
    })
}

fn split_even<T: Real>(panels: &mut Vec<(T, T)>, a: T, b: T, max_width: T) {
    let pieces = ((b - a) / max_width).ceil().to_usize().unwrap_or(1).max(1);
    let h = (b - a) / T::from_usize_lossy(pieces);
    let mut left = a;
    for i in 1..=pieces {
        let right = if i == pieces { b } else { a + h * T::from_usize_lossy(i) };
        panels.push((left, right));
        left = right;
    }
}

fn split_geometric<T: Real>(panels: &mut Vec<(T, T)>, a: T, b: T, start: T) {
    let mut left = a;
    let mut width = start;
    while left < b {
        let mut right = left + width;
        // avoid a sliver at the end
        if right + T::lit(0.5) * width >= b {
            right = b;
        }
        panels.push((left, right));
        left = right;
        width = width * T::lit(1.5);
    }
}

/// Panel plan for ∫ ρ_n^p over the half line with relative tolerance `tol`.
pub fn plan_panels<T: Real>(n: u64, p: T, tol: T) -> Result<PanelPlan<T>> {
    if !(p > T::zero()) || !p.is_finite() {
        return Err(Error::domain("plan_panels", format!("p must be positive, got {p}")));
    }
    super::check_tol("plan_panels", tol)?;
    let evaluator = HermiteEvaluator::new(n)?;
    let zeros = zeros_with(&evaluator)?;
    build_plan(&evaluator, &[p], tol, None, &zeros)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_cut_off() {
        let plan = plan_panels(0, 1.0f64, 1e-8).unwrap();
        assert!(plan.cut_off > 4.0 && plan.cut_off <= 6.0, "{}", plan.cut_off);
        // ∫_c^∞ π^{-1/2} e^{-x²} dx ≤ e^{-c²} / (2c√π)
        let c = plan.cut_off;
        let tail = (-c * c).exp() / (2.0 * c * std::f64::consts::PI.sqrt());
        assert!(tail < 1e-8);
    }

    #[test]
    fn panels_tile_and_respect_wavelength() {
        let plan = plan_panels(100, 2.0f64, 1e-8).unwrap();
        assert_eq!(plan.panels[0].0, 0.0);
        assert_eq!(plan.panels.last().unwrap().1, plan.cut_off);
        for w in plan.panels.windows(2) {
            assert_eq!(w[0].1, w[1].0);
            assert!(w[0].0 < w[0].1);
        }
        for &(a, b) in &plan.panels {
            if b * b < 200.0 {
                let x = a.max(b);
                assert!(b - a <= std::f64::consts::PI / (200.0 - x * x).sqrt() + 1e-12);
            }
        }
    }

    #[test]
    fn cut_off_beyond_zone_a_start() {
        let plan = plan_panels(1000, 0.5f64, 1e-8).unwrap();
        assert!(plan.cut_off * plan.cut_off > 2000.0 + 1000f64.powf(1.0 / 3.0 + 0.1));
    }

    #[test]
    fn zero_counts_and_bounds() {
        for n in [1u64, 2, 5, 20, 101] {
            let z: Vec<f64> = hermite_zeros(n).unwrap();
            assert_eq!(z.len(), (n / 2) as usize);
            let edge = ((2 * n + 1) as f64).sqrt();
            assert!(z.iter().all(|&x| x > 0.0 && x < edge));
        }
        // H_2 = 4x² − 2
        let z: Vec<f64> = hermite_zeros(2).unwrap();
        assert!((z[0] - 0.5f64.sqrt()).abs() < 1e-15);
        // H_3 = 8x³ − 12x
        let z: Vec<f64> = hermite_zeros(3).unwrap();
        assert!((z[0] - 1.5f64.sqrt()).abs() < 1e-15);
    }
}
