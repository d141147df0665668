use std::fs;
use std::path::Path;

use hermite_renyi::asymptotics::c_constant;
use hermite_renyi::entropy::{oscillator_moment_with, renyi_entropy_with, Backend, SHANNON_EXCLUSION};
use hermite_renyi::hermite::{ln_norm, Normalization, Zone, ZoneMap};
use hermite_renyi::quadrature::{airy_constant, zone_integrals, AIRY_P_MIN};
use hermite_renyi::validation::{determinism, report, run_all};
use hermite_renyi::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{csv, fmt17, json, Row};
use crate::spec::{Command, Format, JobSpec};
use crate::svg::{line_chart, Series};

/// Failure of a job, classified for the exit code.
#[derive(Debug)]
pub enum JobError {
    /// Bad input: exit code 2.
    Spec(String),
    /// Numerics did not converge: exit code 3.
    Numerical(String),
    Io(String),
}

impl JobError {
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Spec(_) | JobError::Io(_) => 2,
            JobError::Numerical(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            JobError::Spec(_) => "spec",
            JobError::Numerical(_) => "convergence",
            JobError::Io(_) => "io",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            JobError::Spec(m) | JobError::Numerical(m) | JobError::Io(m) => m,
        }
    }
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            JobError::Numerical(e.to_string())
        } else {
            JobError::Spec(e.to_string())
        }
    }
}

/// What a finished job reports back: `passed` is false only for a failing
/// validation run.
pub struct Outcome {
    pub passed: bool,
}

pub fn run(spec: &JobSpec, svg_path: Option<&str>) -> Result<Outcome, JobError> {
    spec.validate().map_err(JobError::Spec)?;
    match spec.command {
        Command::Compute => compute(spec),
        Command::Sweep => sweep(spec),
        Command::Figure2 => figure2(spec, svg_path),
        Command::Validate => validate(spec),
        Command::Constants => constants(spec),
    }
}

fn emit(spec: &JobSpec, text: &str) -> Result<(), JobError> {
    match &spec.output_path {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => write_file(path, text),
    }
}

fn write_file(path: &str, text: &str) -> Result<(), JobError> {
    fs::write(path, text).map_err(|e| JobError::Io(format!("cannot write {path}: {e}")))
}

/// One cell. At p = 1 (where the Rényi entropy degenerates to Shannon's)
/// only W is reported and the entropy columns are NaN.
fn row(spec: &JobSpec, n: u64, p: f64, backend: Backend) -> Result<Row, JobError> {
    let shift = match Normalization::from(spec.normalization) {
        Normalization::Orthonormal => 0.0,
        Normalization::Orthogonal => p * ln_norm::<f64>(n),
    };
    if (p - 1.0).abs() <= SHANNON_EXCLUSION {
        let (w, method, caveat) = oscillator_moment_with(n, p, spec.tol, backend)?;
        return Ok(Row {
            n,
            p,
            method: method.label(),
            log_w: w.log_value + shift,
            renyi: f64::NAN,
            spreading_log: f64::NAN,
            err_estimate: w.rel_error_estimate,
            caveat: caveat.label(),
        });
    }
    let r = renyi_entropy_with(n, p, spec.tol, backend)?;
    Ok(Row::from_report(&r, shift))
}

/// Evaluates every (n, p) cell in parallel; rows come back in grid order
/// (n-major) and the first failing cell in that order is reported.
fn grid_rows(spec: &JobSpec, ns: &[u64], ps: &[f64], backend: Backend) -> Result<Vec<Row>, JobError> {
    let cells: Vec<(u64, f64)> = ns.iter().flat_map(|&n| ps.iter().map(move |&p| (n, p))).collect();
    let results: Vec<Result<Row, JobError>> =
        cells.par_iter().map(|&(n, p)| row(spec, n, p, backend)).collect();
    results.into_iter().collect()
}

#[derive(Serialize)]
struct ZoneRow {
    zone: &'static str,
    log_value: f64,
    rel_error_estimate: f64,
}

#[derive(Serialize)]
struct ComputeJson {
    #[serde(flatten)]
    row: Row,
    /// Zone breakdown of the same integral (quadrature only).
    zones: Option<Vec<ZoneRow>>,
}

fn compute(spec: &JobSpec) -> Result<Outcome, JobError> {
    let ns = spec.n_values.values();
    if ns.len() != 1 || spec.p_values.len() != 1 {
        return Err(JobError::Spec(
            "compute takes exactly one n and one p (use sweep for grids)".into(),
        ));
    }
    let (n, p) = (ns[0], spec.p_values[0]);
    let r = row(spec, n, p, spec.backend.into())?;
    let text = match spec.output_format {
        Format::Csv => csv(std::slice::from_ref(&r)),
        _ => {
            let zones = if r.method == "quadrature" {
                zone_breakdown(spec, n, p)?
            } else {
                None
            };
            json(&ComputeJson { row: r, zones })
        }
    };
    emit(spec, &text)?;
    Ok(Outcome { passed: true })
}

/// Zone integrals for degree n (the map of index n + 1); None when the map
/// is not defined for such a small n.
fn zone_breakdown(spec: &JobSpec, n: u64, p: f64) -> Result<Option<Vec<ZoneRow>>, JobError> {
    let index = n + 1;
    let map = match ZoneMap::new(index, spec.theta, spec.m_cut) {
        Ok(m) => m,
        Err(_) => return Ok(None),
    };
    let z = zone_integrals(index, p, spec.normalization.into(), &map, spec.tol)?;
    Ok(Some(
        Zone::ALL
            .iter()
            .map(|&k| {
                let m = z.get(k);
                ZoneRow {
                    zone: k.label(),
                    log_value: m.log_value,
                    rel_error_estimate: m.rel_error_estimate,
                }
            })
            .collect(),
    ))
}

fn sweep(spec: &JobSpec) -> Result<Outcome, JobError> {
    let rows = grid_rows(spec, &spec.n_values.values(), &spec.p_values, spec.backend.into())?;
    let text = match spec.output_format {
        Format::Csv => csv(&rows),
        _ => json(&rows),
    };
    emit(spec, &text)?;
    Ok(Outcome { passed: true })
}

fn figure2(spec: &JobSpec, svg_path: Option<&str>) -> Result<Outcome, JobError> {
    // p-major so each series is contiguous
    let ns = spec.n_values.values();
    let mut rows = Vec::new();
    for &p in &spec.p_values {
        rows.extend(grid_rows(spec, &ns, &[p], spec.backend.into())?);
    }
    let series: Vec<Series> = spec
        .p_values
        .iter()
        .map(|&p| Series {
            label: format!("p = {p}"),
            points: rows
                .iter()
                .filter(|r| r.p == p)
                .map(|r| (r.n as f64, r.renyi))
                .collect(),
        })
        .collect();
    let chart = line_chart("Rényi entropy of oscillator states", "n", "R_p", &series);
    match spec.output_format {
        Format::Svg => emit(spec, &chart)?,
        fmt => {
            emit(spec, &if fmt == Format::Csv { csv(&rows) } else { json(&rows) })?;
            let derived = spec
                .output_path
                .as_ref()
                .map(|o| Path::new(o).with_extension("svg").to_string_lossy().into_owned());
            if let Some(path) = svg_path.map(str::to_owned).or(derived) {
                write_file(&path, &chart)?;
            }
        }
    }
    Ok(Outcome { passed: true })
}

fn validate(spec: &JobSpec) -> Result<Outcome, JobError> {
    let mut results = run_all();
    let first = report(&results);
    results.push(determinism(&first));
    let passed = results.iter().all(|r| r.passed);
    let text = match spec.output_format {
        Format::Json => {
            #[derive(Serialize)]
            struct Line<'a> {
                id: u32,
                name: &'a str,
                passed: bool,
                detail: &'a str,
            }
            let lines: Vec<Line> = results
                .iter()
                .map(|r| Line {
                    id: r.id,
                    name: r.name,
                    passed: r.passed,
                    detail: &r.detail,
                })
                .collect();
            json(&lines)
        }
        _ => report(&results),
    };
    emit(spec, &text)?;
    Ok(Outcome { passed })
}

#[derive(Serialize)]
struct ConstantRow {
    p: f64,
    c_p: Option<f64>,
    c_p_err: Option<f64>,
    airy_c_p: Option<f64>,
    airy_c_p_err: Option<f64>,
}

fn constants(spec: &JobSpec) -> Result<Outcome, JobError> {
    let rows = spec
        .p_values
        .par_iter()
        .map(|&p| {
            let small = if p > 0.0 && p < 2.0 { Some(c_constant(p)?) } else { None };
            let large = if p > AIRY_P_MIN { Some(airy_constant(p, spec.tol)?) } else { None };
            if small.is_none() && large.is_none() {
                return Err(JobError::Spec(format!(
                    "p = {p}: c_p needs 0 < p < 2 and C_p needs p > {AIRY_P_MIN}"
                )));
            }
            Ok(ConstantRow {
                p,
                c_p: small.map(|c| c.value),
                c_p_err: small.map(|c| c.abs_error_bound),
                airy_c_p: large.map(|c| c.value),
                airy_c_p_err: large.map(|c| c.abs_error_bound),
            })
        })
        .collect::<Vec<Result<_, JobError>>>()
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let text = match spec.output_format {
        Format::Csv => {
            let cell = |v: Option<f64>| v.map(fmt17).unwrap_or_default();
            let mut s = String::from("p,c_p,c_p_err,C_p,C_p_err\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt17(r.p),
                    cell(r.c_p),
                    cell(r.c_p_err),
                    cell(r.airy_c_p),
                    cell(r.airy_c_p_err)
                ));
            }
            s
        }
        _ => json(&rows),
    };
    emit(spec, &text)?;
    Ok(Outcome { passed: true })
}
