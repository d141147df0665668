use crate::error::{Error, Result};
use crate::hermite::{classify_zone, ln_norm, HermiteEvaluator, Normalization, Zone, ZoneMap};
use crate::scalar::{log_sum_exp, Real};

use super::gauss::{mapped_nodes, UnitRule};
use super::panels::{build_plan, log_moment_lower_bound, zeros_with, NODES_PER_PANEL};
use super::{check_tol, LogMoment, PANEL_BUDGET};

/// Largest degree accepted by the quadrature (cost grows linearly in n).
pub const MAX_QUADRATURE_DEGREE: u64 = 10_000;

const MAX_DEPTH: u32 = 60;

/// The five restrictions of ∫ ρ^p to the zones of a [`ZoneMap`] (both signs
/// of x). Empty zones carry log value −∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZoneIntegrals<T> {
    pub a: LogMoment<T>,
    pub b3: LogMoment<T>,
    pub b2: LogMoment<T>,
    pub b1: LogMoment<T>,
    pub c: LogMoment<T>,
}

impl<T: Real> ZoneIntegrals<T> {
    pub fn get(&self, zone: Zone) -> LogMoment<T> {
        match zone {
            Zone::A => self.a,
            Zone::B3 => self.b3,
            Zone::B2 => self.b2,
            Zone::B1 => self.b1,
            Zone::C => self.c,
        }
    }

    /// I_{b1} + I_{b2} + I_{b3}.
    pub fn transition(&self) -> LogMoment<T> {
        self.b1.add(&self.b2).add(&self.b3)
    }

    /// Sum of all five pieces.
    pub fn total(&self) -> LogMoment<T> {
        self.c.add(&self.transition()).add(&self.a)
    }
}

fn check_inputs<T: Real>(routine: &'static str, n: u64, ps: &[T], tol: T) -> Result<()> {
    check_tol(routine, tol)?;
    if n > MAX_QUADRATURE_DEGREE {
        return Err(Error::domain(
            routine,
            format!("degree {n} exceeds {MAX_QUADRATURE_DEGREE}; use the asymptotic predictors"),
        ));
    }
    for &p in ps {
        if !(p >= T::lit(0.1) && p <= T::lit(10.0)) {
            return Err(Error::domain(routine, format!("p must lie in [0.1, 10], got {p}")));
        }
    }
    Ok(())
}

/// Nodes on [u_lo, u_hi] of the panel [a, b] with ln of their weights.
fn log_nodes<T: Real>(rule: &UnitRule<T>, a: T, b: T, u_lo: T, u_hi: T) -> (Vec<T>, Vec<T>) {
    mapped_nodes(rule, a, b, u_lo, u_hi)
        .into_iter()
        .map(|(x, w)| (x, w.ln()))
        .unzip()
}

struct Integrator<'a, T> {
    evaluator: &'a HermiteEvaluator<T>,
    ps: &'a [T],
    rule16: UnitRule<T>,
    rule8: UnitRule<T>,
    ln_tol: T,
    /// ln of (tol/4) × (lower bound on the integral) / cut-off, per p: the
    /// absolute error allowed per unit length.
    ln_abs_density: Vec<T>,
    panels_used: usize,
}

impl<'a, T: Real> Integrator<'a, T> {
    fn new(evaluator: &'a HermiteEvaluator<T>, ps: &'a [T], tol: T, cut_off: T, order: usize) -> Self {
        let tol = tol.max(T::lit(64.0) * T::epsilon());
        let n = evaluator.degree();
        let ln_abs_density = ps
            .iter()
            .map(|&p| (tol / T::lit(4.0)).ln() + log_moment_lower_bound(n, p) - cut_off.ln())
            .collect();
        Integrator {
            evaluator,
            ps,
            rule16: UnitRule::order(order),
            rule8: UnitRule::order(order / 2),
            ln_tol: tol.ln(),
            ln_abs_density,
            panels_used: 0,
        }
    }

    fn log_densities(&self, xs: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); xs.len()];
        self.evaluator.log_density_batch(xs, &mut out);
        out
    }

    /// Integrates ψ^{2p} over [a, b] for every p, bisecting (in the
    /// smoothstep variable) until the two rules agree. Returns per p the ln of the integral and the ln of the
    /// summed |I16 − I8| estimates.
    fn panel(&mut self, a: T, b: T) -> Result<Vec<(T, T)>> {
        let np = self.ps.len();
        let mut pieces: Vec<Vec<T>> = vec![Vec::new(); np];
        let mut errors: Vec<Vec<T>> = vec![Vec::new(); np];
        let mut stack = vec![(T::zero(), T::one(), 0u32)];
        let mut estimates = Vec::with_capacity(np);
        while let Some((lo, hi, depth)) = stack.pop() {
            self.panels_used += 1;
            if self.panels_used > PANEL_BUDGET {
                return Err(Error::convergence(
                    "entropic_moment",
                    format!("panel budget {PANEL_BUDGET} exhausted"),
                ));
            }
            let (x16, lw16) = log_nodes(&self.rule16, a, b, lo, hi);
            let (x8, lw8) = log_nodes(&self.rule8, a, b, lo, hi);
            let r16 = self.log_densities(&x16);
            let r8 = self.log_densities(&x8);
            let ln_width = ((b - a) * (hi - lo)).ln();
            let mut converged = true;
            estimates.clear();
            for (k, &p) in self.ps.iter().enumerate() {
                let t16: Vec<T> = r16.iter().zip(&lw16).map(|(&r, &w)| p * r + w).collect();
                let t8: Vec<T> = r8.iter().zip(&lw8).map(|(&r, &w)| p * r + w).collect();
                let l16 = log_sum_exp(&t16);
                let l8 = log_sum_exp(&t8);
                let m = l16.max(l8);
                let ln_diff = if m == T::neg_infinity() {
                    T::neg_infinity()
                } else {
                    m + ((l16 - m).exp() - (l8 - m).exp()).abs().ln()
                };
                let allowed = (self.ln_tol + l16).max(self.ln_abs_density[k] + ln_width);
                if !(ln_diff <= allowed) {
                    converged = false;
                }
                estimates.push((l16, ln_diff));
            }
            if converged {
                for (k, &(l, e)) in estimates.iter().enumerate() {
                    pieces[k].push(l);
                    errors[k].push(e);
                }
            } else {
                if depth >= MAX_DEPTH {
                    return Err(Error::convergence(
                        "entropic_moment",
                        format!("panel [{a}, {b}] still unresolved after {MAX_DEPTH} bisections"),
                    ));
                }
                let mid = T::lit(0.5) * (lo + hi);
                // right half first so the left half is processed next
                stack.push((mid, hi, depth + 1));
                stack.push((lo, mid, depth + 1));
            }
        }
        Ok(pieces
            .iter()
            .zip(&errors)
            .map(|(v, e)| (log_sum_exp(v), log_sum_exp(e)))
            .collect())
    }
}

/// Integrates over every panel of the plan; returns per panel (with its
/// midpoint) the per-p (ln I, ln err) pairs, all on the half line and in the
/// orthonormal normalization.
fn integrate_half_line<T: Real>(
    evaluator: &HermiteEvaluator<T>,
    ps: &[T],
    tol: T,
    map: Option<&ZoneMap<T>>,
    order: usize,
) -> Result<Vec<(T, Vec<(T, T)>)>> {
    let zeros = zeros_with(evaluator)?;
    let plan = build_plan(evaluator, ps, tol, map, &zeros)?;
    let mut integrator = Integrator::new(evaluator, ps, tol, plan.cut_off, order);
    let mut out = Vec::with_capacity(plan.panels.len());
    for &(a, b) in &plan.panels {
        let r = integrator.panel(a, b)?;
        out.push((T::lit(0.5) * (a + b), r));
    }
    Ok(out)
}

/// Combines per-panel results for exponent index k into a full-line moment.
fn reduce<T: Real>(
    panels: &[(T, Vec<(T, T)>)],
    k: usize,
    shift: T,
    filter: impl Fn(T) -> bool,
) -> LogMoment<T> {
    let mut logs = Vec::new();
    let mut errs = Vec::new();
    for (mid, r) in panels {
        if filter(*mid) {
            logs.push(r[k].0);
            errs.push(r[k].1);
        }
    }
    let log_value = log_sum_exp(&logs);
    if log_value == T::neg_infinity() {
        return LogMoment::zero();
    }
    let rel = (log_sum_exp(&errs) - log_value).exp();
    LogMoment::new(log_value + T::LN_2() + shift, rel)
}

fn normalization_shift<T: Real>(n: u64, p: T, normalization: Normalization) -> T {
    match normalization {
        Normalization::Orthonormal => T::zero(),
        // ρ_n = h_n ρ̃_n
        Normalization::Orthogonal => p * ln_norm::<T>(n),
    }
}

/// ln ∫ ρ_n(x)^p dx over the real line for degree `n`.
pub fn entropic_moment<T: Real>(
    n: u64,
    p: T,
    normalization: Normalization,
    tol: T,
) -> Result<LogMoment<T>> {
    Ok(entropic_moments(n, &[p], normalization, tol)?[0])
}

/// [`entropic_moment`] for several exponents sharing one set of density
/// evaluations; each panel is refined until every exponent is resolved.
pub fn entropic_moments<T: Real>(
    n: u64,
    ps: &[T],
    normalization: Normalization,
    tol: T,
) -> Result<Vec<LogMoment<T>>> {
    entropic_moments_with_order(n, ps, normalization, tol, NODES_PER_PANEL)
}

/// [`entropic_moments`] with `nodes_per_panel` points in the primary rule
/// (checked against half as many); must be even and at least 4.
pub fn entropic_moments_with_order<T: Real>(
    n: u64,
    ps: &[T],
    normalization: Normalization,
    tol: T,
    nodes_per_panel: usize,
) -> Result<Vec<LogMoment<T>>> {
    check_inputs("entropic_moment", n, ps, tol)?;
    if nodes_per_panel < 4 || nodes_per_panel % 2 != 0 {
        return Err(Error::Config(format!(
            "nodes_per_panel must be even and ≥ 4, got {nodes_per_panel}"
        )));
    }
    if ps.is_empty() {
        return Ok(Vec::new());
    }
    let evaluator = HermiteEvaluator::new(n)?;
    let panels = integrate_half_line(&evaluator, ps, tol, None, nodes_per_panel)?;
    Ok(ps
        .iter()
        .enumerate()
        .map(|(k, &p)| reduce(&panels, k, normalization_shift(n, p, normalization), |_| true))
        .collect())
}

/// Zone-by-zone pieces of ∫ ρ_{n−1}^p for the map of `n` (the predictors'
/// convention: input n means degree n − 1).
pub fn zone_integrals<T: Real>(
    n: u64,
    p: T,
    normalization: Normalization,
    map: &ZoneMap<T>,
    tol: T,
) -> Result<ZoneIntegrals<T>> {
    if n == 0 || map.n != n {
        return Err(Error::Config(format!(
            "zone map built for n = {}, asked for n = {n} (n ≥ 1)",
            map.n
        )));
    }
    let degree = n - 1;
    check_inputs("zone_integrals", degree, &[p], tol)?;
    let evaluator = HermiteEvaluator::new(degree)?;
    let panels = integrate_half_line(&evaluator, &[p], tol, Some(map), NODES_PER_PANEL)?;
    let shift = normalization_shift(degree, p, normalization);
    let part = |zone: Zone| reduce(&panels, 0, shift, |mid| classify_zone(map, mid) == zone);
    Ok(ZoneIntegrals {
        a: part(Zone::A),
        b3: part(Zone::B3),
        b2: part(Zone::B2),
        b1: part(Zone::B1),
        c: part(Zone::C),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::ln_gamma;

    fn ground(p: f64) -> f64 {
        (1.0 - p) / 2.0 * std::f64::consts::PI.ln() - 0.5 * p.ln()
    }

    fn first_excited(p: f64) -> f64 {
        p * (2.0 / std::f64::consts::PI.sqrt()).ln() + ln_gamma(p + 0.5).unwrap().value
            - (p + 0.5) * p.ln()
    }

    #[test]
    fn closed_forms_for_low_states() {
        for &p in &[0.5f64, 1.0, 1.5, 2.0, 3.0, 5.0] {
            let w0 = entropic_moment(0, p, Normalization::Orthonormal, 1e-10).unwrap();
            assert!((w0.log_value - ground(p)).abs() < 1e-9, "n=0 p={p}");
            let w1 = entropic_moment(1, p, Normalization::Orthonormal, 1e-10).unwrap();
            assert!((w1.log_value - first_excited(p)).abs() < 1e-9, "n=1 p={p}");
        }
        let w = entropic_moment(1, 2.0f64, Normalization::Orthonormal, 1e-10).unwrap();
        assert!((w.value() - 0.299_206_710_301_074_5).abs() < 1e-12);
    }

    #[test]
    fn normalization_is_unity() {
        for n in [0u64, 1, 5, 50, 500] {
            let w = entropic_moment(n, 1.0f64, Normalization::Orthonormal, 1e-10).unwrap();
            assert!(w.log_value.abs() < 1e-9, "n = {n}: {}", w.log_value);
            assert!(w.rel_error_estimate < 1e-8);
        }
    }

    #[test]
    fn orthogonal_shift() {
        // ∫ H_3² e^{-x²} = h_3
        let w = entropic_moment(3, 1.0f64, Normalization::Orthogonal, 1e-10).unwrap();
        assert!((w.log_value - ln_norm::<f64>(3)).abs() < 1e-9);
    }

    #[test]
    fn multi_exponent_matches_single() {
        let ps = [0.5f64, 2.0, 3.0];
        let all = entropic_moments(40, &ps, Normalization::Orthonormal, 1e-10).unwrap();
        for (k, &p) in ps.iter().enumerate() {
            let one = entropic_moment(40, p, Normalization::Orthonormal, 1e-10).unwrap();
            assert!((all[k].log_value - one.log_value).abs() < 1e-10);
        }
    }

    #[test]
    fn zones_add_up() {
        let map = ZoneMap::<f64>::with_defaults(500).unwrap();
        let z = zone_integrals(500, 1.0, Normalization::Orthonormal, &map, 1e-10).unwrap();
        let whole = entropic_moment(499, 1.0, Normalization::Orthonormal, 1e-10).unwrap();
        assert!((z.total().log_value - whole.log_value).abs() < 2e-10);
        assert_eq!(z.b1.log_value, f64::NEG_INFINITY);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(entropic_moment(10, 0.05f64, Normalization::Orthonormal, 1e-8).is_err());
        assert!(entropic_moment(10, 2.0f64, Normalization::Orthonormal, 1e-13).is_err());
        assert!(entropic_moment(20_000, 2.0f64, Normalization::Orthonormal, 1e-8).is_err());
    }
}
