//! The acceptance suite: closed-form oracles, invariants and convergence
//! trends, each reduced to one pass/fail line.
//!
//! Report text is deterministic: every number is printed with a fixed
//! `{:.6e}` format and the criteria run sequentially in a fixed order.

use std::fmt::Write as _;

use crate::asymptotics::c_constant;
use crate::entropy::{renyi_entropy_with, Backend};
use crate::error::Result;
use crate::figure::{figure2_grid, figure2_series, FIGURE2_P};
use crate::hermite::{windowed_envelope_error, Normalization, Zone, ZoneMap};
use crate::quadrature::{airy_constant, entropic_moment, entropic_moments, zone_integrals};
use crate::special::{airy_ai, airy_ai_asymptotic, airy_ai_series, airy_envelope, ln_gamma};

const TOL: f64 = 1e-10;

/// Degrees (as n, for ψ_{n−1}) of the convergence table.
pub const TABLE_N: [u64; 4] = [100, 400, 1600, 6400];
/// Exponents of the convergence table.
pub const TABLE_P: [f64; 4] = [0.5, 1.5, 2.0, 3.0];

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("[{tag}] {} {}: {}", self.id, self.name, self.detail)
    }

    fn from_result(id: u32, name: &'static str, r: Result<(bool, String)>) -> Self {
        let (passed, detail) = r.unwrap_or_else(|e| (false, format!("error: {e}")));
        CriterionResult {
            id,
            name,
            passed,
            detail,
        }
    }
}

/// ln W_p[ρ̃_{n−1}] for every (n, p) of [`TABLE_N`] × [`TABLE_P`], row per n.
#[derive(Debug, Clone)]
pub struct MomentTable {
    pub log_w: Vec<[f64; 4]>,
}

impl MomentTable {
    pub fn compute() -> Result<Self> {
        let log_w = TABLE_N
            .iter()
            .map(|&n| {
                let ms = entropic_moments(n - 1, &TABLE_P, Normalization::Orthonormal, TOL)?;
                Ok([ms[0].log_value, ms[1].log_value, ms[2].log_value, ms[3].log_value])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MomentTable { log_w })
    }

    fn get(&self, n: u64, p: f64) -> f64 {
        let i = TABLE_N.iter().position(|&m| m == n).expect("n in table");
        let j = TABLE_P.iter().position(|&q| q == p).expect("p in table");
        self.log_w[i][j]
    }
}

fn fmt_list(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:.6e}")).collect::<Vec<_>>().join(", ")
}

fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

pub fn normalization() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for n in [0u64, 1, 5, 50, 500, 2000] {
        let w = entropic_moment(n, 1.0, Normalization::Orthonormal, TOL)?;
        worst = worst.max((w.value() - 1.0).abs());
    }
    Ok((worst <= 1e-8, format!("max |W_1 - 1| = {worst:.6e} (limit 1e-8)")))
}

pub fn closed_forms() -> Result<(bool, String)> {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let mut worst = 0.0f64;
    for p in [0.5, 1.0, 1.5, 2.0, 3.0, 5.0] {
        let w0 = std::f64::consts::PI.powf((1.0 - p) / 2.0) / p.sqrt();
        let ln_w1 = p * (2.0 / sqrt_pi).ln() + ln_gamma(p + 0.5)?.value - (p + 0.5) * p.ln();
        let q0 = entropic_moment(0, p, Normalization::Orthonormal, TOL)?.value();
        let q1 = entropic_moment(1, p, Normalization::Orthonormal, TOL)?.value();
        worst = worst.max(((q0 - w0) / w0).abs()).max(((q1 - ln_w1.exp()) / ln_w1.exp()).abs());
    }
    Ok((worst <= 1e-8, format!("max rel error = {worst:.6e} (limit 1e-8)")))
}

pub fn subcritical(table: &MomentTable) -> Result<(bool, String)> {
    let mut passed = true;
    let mut detail = String::new();
    for p in [0.5f64, 1.5] {
        let ln_c = c_constant(p)?.value.ln();
        let devs: Vec<f64> = TABLE_N
            .iter()
            .map(|&n| {
                let lead = ln_c + (1.0 - p) / 2.0 * (2.0 * n as f64).ln();
                (table.get(n, p) - lead).exp() - 1.0
            })
            .collect();
        let abs: Vec<f64> = devs.iter().map(|d| d.abs()).collect();
        passed &= strictly_decreasing(&abs) && abs[3] < 0.10;
        let _ = write!(detail, "p={p}: ratio-1 = [{}]; ", fmt_list(&devs));
    }
    detail.push_str("need |ratio-1| strictly decreasing, < 1e-1 at n=6400");
    Ok((passed, detail))
}

pub fn critical(table: &MomentTable) -> Result<(bool, String)> {
    let ns = [400u64, 1600, 6400];
    let qs: Vec<f64> = ns
        .iter()
        .map(|&n| {
            let nf = n as f64;
            std::f64::consts::PI.powi(2) / 2.0 * (2.0 * nf).sqrt() * table.get(n, 2.0).exp() / nf.ln()
        })
        .collect();
    let devs: Vec<f64> = qs.iter().map(|q| (q - 1.0).abs()).collect();
    let passed = strictly_decreasing(&devs) && devs[2] <= 0.25;
    let doubled: Vec<f64> = qs.iter().map(|q| 2.0 * q).collect();
    Ok((
        passed,
        format!(
            "q = [{}]; 2q = [{}]; need |q-1| decreasing, <= 2.5e-1 at n=6400",
            fmt_list(&qs),
            fmt_list(&doubled)
        ),
    ))
}

/// ∫ Ai(x)^{2p} dx by the trapezoid rule with step h on [a, 10], where a is
/// the zero of Ai nearest `start`, plus the cycle-averaged tail below a.
fn trapezoid_power_integral(p: f64, start: f64, h: f64) -> Result<f64> {
    // bracket a sign change of Ai around `start` and bisect
    let mut lo = start - 0.5;
    let mut hi = start;
    let ai = |x: f64| airy_ai(x).map(|v| v.value);
    while ai(lo)?.signum() == ai(hi)?.signum() {
        hi = lo;
        lo -= 0.05;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if ai(mid)?.signum() == ai(lo)?.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = 0.5 * (lo + hi);
    let b = 10.0;
    let steps = ((b - a) / h).round() as usize;
    let step = (b - a) / steps as f64;
    let mut sum = 0.0;
    for i in 0..=steps {
        let x = a + step * i as f64;
        let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
        sum += w * ai(x)?.abs().powf(2.0 * p);
    }
    // mean of |cos|^{2p} over a period, Γ(p+½)/(√π Γ(p+1))
    let mean = (ln_gamma(p + 0.5)?.value - ln_gamma(p + 1.0)?.value).exp()
        / std::f64::consts::PI.sqrt();
    let s = -a;
    let tail = mean
        * std::f64::consts::PI.powf(-p)
        * (s.powf(1.0 - p / 2.0) / (p / 2.0 - 1.0)
            + 5.0 * p / 32.0 * s.powf(-2.0 - p / 2.0) / (p / 2.0 + 2.0));
    Ok(sum * step + tail)
}

pub fn supercritical(table: &MomentTable) -> Result<(bool, String)> {
    let p = 3.0;
    let c3 = airy_constant(p, TOL)?.value;
    let ns = [400u64, 1600, 6400];
    let ratios: Vec<f64> = ns
        .iter()
        .map(|&n| {
            let lead = 2.0 * c3
                * (2.0 * std::f64::consts::PI).powf(-p)
                * (2.0 * n as f64).powf(-2.0 / 3.0);
            table.get(n, p).exp() / lead
        })
        .collect();
    let devs: Vec<f64> = ratios.iter().map(|r| (r - 1.0).abs()).collect();
    let trend_ok = strictly_decreasing(&devs) && devs[2] < 0.15;

    let scale = (2.0 * std::f64::consts::PI).powf(p) * 2f64.powf((2.0 - p) / 3.0);
    let coarse = scale * trapezoid_power_integral(p, -400.0, 2e-3)?;
    let fine = scale * trapezoid_power_integral(p, -400.0, 1e-3)?;
    let agreement = ((c3 - fine) / fine).abs();
    let oracle_ok = agreement <= 1e-6;

    let scaled: Vec<f64> = ratios.iter().map(|r| r / 2f64.powf(p - 1.0)).collect();
    Ok((
        trend_ok && oracle_ok,
        format!(
            "ratio = [{}]; ratio/2^(p-1) = [{}]; C_3 = {c3:.9e}, trapezoid = {fine:.9e} \
             (h vs h/2 diff {:.3e}), rel diff {agreement:.3e}; need |ratio-1| decreasing, \
             < 1.5e-1 at n=6400, oracle within 1e-6",
            fmt_list(&ratios),
            fmt_list(&scaled),
            (coarse - fine).abs() / fine
        ),
    ))
}

pub fn zone_dominance() -> Result<(bool, String)> {
    let n = 2000u64;
    let map = ZoneMap::<f64>::with_defaults(n)?;
    let mut passed = true;
    let mut detail = String::new();
    for p in [0.5, 3.0] {
        let z = zone_integrals(n, p, Normalization::Orthonormal, &map, TOL)?;
        let vals: Vec<f64> = Zone::ALL.iter().map(|&k| z.get(k).value()).collect();
        let total = z.total().value();
        let c = z.get(Zone::C).value();
        let b = z.transition().value();
        let a = z.get(Zone::A).value();
        let dominant = if p < 2.0 {
            Zone::ALL
                .iter()
                .filter(|&&k| k != Zone::C)
                .all(|&k| c > z.get(k).value())
        } else {
            b > c
        };
        passed &= dominant && a * 1e6 < total;
        let _ = write!(
            detail,
            "p={p}: [c, b1, b2, b3, a] = [{}], I_a/total = {:.3e}; ",
            fmt_list(&vals),
            a / total
        );
    }
    detail.push_str("need I_c max at p=0.5, b-sum > I_c at p=3, I_a/total < 1e-6");
    Ok((passed, detail))
}

pub fn special_functions() -> Result<(bool, String)> {
    let ai0 = airy_ai(0.0f64)?.value;
    let e_ai0 = (ai0 - 0.355_028_053_887_817_239_26).abs();

    let mut overlap = 0.0f64;
    for i in 0..=200 {
        let t = 7.0 + 2.0 * i as f64 / 200.0;
        for x in [-t, t] {
            let s = airy_ai_series(x)?.value;
            let a = airy_ai_asymptotic(x)?.value;
            let scale = if x < 0.0 { airy_envelope(x) } else { a.abs() };
            overlap = overlap.max((s - a).abs() / scale);
        }
    }

    let mut recursion = 0.0f64;
    for i in 0..=1990 {
        let x = 0.5 + 0.05 * i as f64;
        let d = ln_gamma(x + 1.0)?.value - ln_gamma(x)?.value - x.ln();
        recursion = recursion.max(d.abs());
    }
    Ok((
        e_ai0 <= 1e-12 && overlap <= 1e-9 && recursion <= 1e-12,
        format!(
            "|Ai(0) err| = {e_ai0:.3e}, branch overlap = {overlap:.3e}, \
             ln-gamma recursion = {recursion:.3e} (limits 1e-12, 1e-9, 1e-12)"
        ),
    ))
}

pub fn regional_asymptotics() -> Result<(bool, String)> {
    // (fraction of √(2n), limit at n = 1000); 1.0 is the b₂ centre
    let points = [(0.3, 0.02), (0.5, 0.02), (0.7, 0.02), (1.5, 0.01), (1.0, 0.05)];
    let mut errs = [[0.0f64; 5]; 2];
    for (row, n) in [1000u64, 4000].into_iter().enumerate() {
        let map = ZoneMap::<f64>::with_defaults(n)?;
        let r = (2.0 * n as f64).sqrt();
        for (k, &(f, _)) in points.iter().enumerate() {
            errs[row][k] = windowed_envelope_error(n, f * r, &map, 33)?;
        }
    }
    let within = points.iter().zip(&errs[0]).all(|(&(_, lim), &e)| e <= lim);
    let shrink = errs[0].iter().zip(&errs[1]).all(|(a, b)| b < a);
    Ok((
        within && shrink,
        format!(
            "x/sqrt(2n) = [3e-1, 5e-1, 7e-1, 1.5, 1 (b2)]: n=1000 [{}], n=4000 [{}]; \
             limits [2e-2, 2e-2, 2e-2, 1e-2, 5e-2], must shrink",
            fmt_list(&errs[0]),
            fmt_list(&errs[1])
        ),
    ))
}

pub fn figure2_reproduction() -> Result<(bool, String)> {
    let grid = figure2_grid();
    let series = figure2_series()?;
    let monotone = series
        .iter()
        .all(|s| s.windows(2).all(|w| w[1].renyi > w[0].renyi));
    let ordered = (0..grid.len())
        .filter(|&i| grid[i] > 100_000_000)
        .all(|i| series[0][i].renyi > series[1][i].renyi && series[1][i].renyi > series[2][i].renyi);
    let last = grid.len() - 1;
    let n = grid[last] as f64;
    let closed = 0.5 * (2.0 * n).ln() - 2.0 * c_constant(FIGURE2_P[0])?.value.ln();
    let direct = renyi_entropy_with(grid[last], FIGURE2_P[0], TOL, Backend::Asymptotic)?.renyi;
    let err = (series[0][last].renyi - closed).abs();
    Ok((
        monotone && ordered && err <= 1e-9 && direct == series[0][last].renyi,
        format!(
            "monotone = {monotone}, ordered above 1e8 = {ordered}, \
             R_3/2(1e12) = {:.9e} vs closed form {closed:.9e} (diff {err:.3e}, limit 1e-9)",
            series[0][last].renyi
        ),
    ))
}

/// Criteria 1–9 in order.
pub fn run_all() -> Vec<CriterionResult> {
    let table = MomentTable::compute();
    let with_table = |f: fn(&MomentTable) -> Result<(bool, String)>| match &table {
        Ok(t) => f(t),
        Err(e) => Err(e.clone()),
    };
    vec![
        CriterionResult::from_result(1, "normalization", normalization()),
        CriterionResult::from_result(2, "closed-form oracles", closed_forms()),
        CriterionResult::from_result(3, "subcritical convergence", with_table(subcritical)),
        CriterionResult::from_result(4, "critical regime", with_table(critical)),
        CriterionResult::from_result(5, "supercritical convergence", with_table(supercritical)),
        CriterionResult::from_result(6, "zone dominance", zone_dominance()),
        CriterionResult::from_result(7, "special functions", special_functions()),
        CriterionResult::from_result(8, "regional asymptotics", regional_asymptotics()),
        CriterionResult::from_result(9, "figure 2 reproduction", figure2_reproduction()),
    ]
}

/// Joins result lines into the report text.
pub fn report(results: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&r.line());
        out.push('\n');
    }
    out
}

/// Runs criteria 1–9 a second time and compares the report text with
/// `first`.
pub fn determinism(first: &str) -> CriterionResult {
    let second = report(&run_all());
    let same = second == first;
    CriterionResult {
        id: 10,
        name: "determinism",
        passed: same,
        detail: format!(
            "second run {} ({} bytes)",
            if same { "byte-identical" } else { "differs" },
            first.len()
        ),
    }
}
