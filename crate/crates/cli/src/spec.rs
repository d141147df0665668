//! Job specifications: what to compute, over which grid, and where to put it.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use hermite_renyi::entropy::Backend;
use hermite_renyi::hermite::{Normalization, DEFAULT_M_CUT, DEFAULT_THETA};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Compute,
    Sweep,
    Figure2,
    Validate,
    Constants,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum NormArg {
    Orthonormal,
    Orthogonal,
}

impl From<NormArg> for Normalization {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::Orthonormal => Normalization::Orthonormal,
            NormArg::Orthogonal => Normalization::Orthogonal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BackendArg {
    Auto,
    Quadrature,
    Asymptotic,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Auto => Backend::Auto,
            BackendArg::Quadrature => Backend::Quadrature,
            BackendArg::Asymptotic => Backend::Asymptotic,
        }
    }
}

/// Degrees to evaluate: an explicit list or `log:LO:HI:COUNT`, COUNT
/// integers rounded from 10^LO … 10^HI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum NGrid {
    List(Vec<u64>),
    LogSpaced { lo: f64, hi: f64, count: usize },
}

impl NGrid {
    pub fn values(&self) -> Vec<u64> {
        match self {
            NGrid::List(v) => v.clone(),
            NGrid::LogSpaced { lo, hi, count } => {
                if *count == 1 {
                    return vec![10f64.powf(*lo).round() as u64];
                }
                let steps = (*count - 1) as f64;
                (0..*count)
                    .map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / steps).round() as u64)
                    .collect()
            }
        }
    }
}

impl fmt::Display for NGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NGrid::List(v) => f.write_str(&join(v)),
            NGrid::LogSpaced { lo, hi, count } => write!(f, "log:{lo:?}:{hi:?}:{count}"),
        }
    }
}

impl FromStr for NGrid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("log:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 3 {
                return Err(format!("expected log:LO:HI:COUNT, got {s:?}"));
            }
            let lo: f64 = parts[0].parse().map_err(|e| format!("bad LO {:?}: {e}", parts[0]))?;
            let hi: f64 = parts[1].parse().map_err(|e| format!("bad HI {:?}: {e}", parts[1]))?;
            let count: usize =
                parts[2].parse().map_err(|e| format!("bad COUNT {:?}: {e}", parts[2]))?;
            if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && hi >= lo && hi <= 19.0) {
                return Err(format!("log range needs 0 ≤ LO ≤ HI ≤ 19, got {lo}..{hi}"));
            }
            if count == 0 {
                return Err("COUNT must be positive".into());
            }
            return Ok(NGrid::LogSpaced { lo, hi, count });
        }
        let v = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|e| format!("bad n {t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        if v.is_empty() {
            return Err("empty n list".into());
        }
        Ok(NGrid::List(v))
    }
}

impl From<NGrid> for String {
    fn from(g: NGrid) -> String {
        g.to_string()
    }
}

impl TryFrom<String> for NGrid {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

fn join<T: fmt::Debug>(v: &[T]) -> String {
    v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",")
}

pub fn parse_p_list(s: &str) -> Result<Vec<f64>, String> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad p {t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err("empty p list".into());
    }
    if let Some(p) = v.iter().find(|p| !p.is_finite()) {
        return Err(format!("p must be finite, got {p}"));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Command,
    pub n_values: NGrid,
    pub p_values: Vec<f64>,
    pub normalization: NormArg,
    pub tol: f64,
    pub output_format: Format,
    /// `None` means stdout.
    pub output_path: Option<String>,
    pub theta: f64,
    pub m_cut: f64,
    pub backend: BackendArg,
}

impl JobSpec {
    /// Defaults for everything but the command.
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            n_values: NGrid::List(vec![0]),
            p_values: vec![2.0],
            normalization: NormArg::Orthonormal,
            tol: hermite_renyi::quadrature::DEFAULT_TOL,
            output_format: Format::Csv,
            output_path: None,
            theta: DEFAULT_THETA,
            m_cut: DEFAULT_M_CUT,
            backend: BackendArg::Auto,
        }
    }

    /// The command line (after the program name) that reproduces this spec.
    pub fn to_args(&self) -> Vec<String> {
        let mut a = vec![
            self.command.name(),
            "--n".into(),
            self.n_values.to_string(),
            "--p".into(),
            join(&self.p_values),
            "--normalization".into(),
            self.normalization.name(),
            "--tol".into(),
            format!("{:?}", self.tol),
            "--format".into(),
            self.output_format.name(),
        ];
        if let Some(out) = &self.output_path {
            a.push("--out".into());
            a.push(out.clone());
        }
        a.extend([
            "--theta".into(),
            format!("{:?}", self.theta),
            "--m-cut".into(),
            format!("{:?}", self.m_cut),
            "--backend".into(),
            self.backend.name(),
        ]);
        a
    }

    /// Canonical one-line form: `to_args` joined by spaces.
    pub fn canonical(&self) -> String {
        self.to_args().join(" ")
    }

    /// Checks ranges clap cannot express.
    pub fn validate(&self) -> Result<(), String> {
        if !(self.tol > 1e-12 && self.tol < 1e-2) {
            return Err(format!("tol must lie in (1e-12, 1e-2), got {}", self.tol));
        }
        if !(self.theta > 0.0 && self.theta < 1.0 / 6.0) {
            return Err(format!("theta must lie in (0, 1/6), got {}", self.theta));
        }
        if !(self.m_cut > 0.0 && self.m_cut.is_finite()) {
            return Err(format!("m-cut must be positive, got {}", self.m_cut));
        }
        if self.output_format == Format::Svg && self.command != Command::Figure2 {
            return Err("svg output is only available for figure2".into());
        }
        Ok(())
    }
}

trait ValueEnumName {
    fn name(&self) -> String;
}

impl<T: ValueEnum> ValueEnumName for T {
    fn name(&self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!("1,10,100".parse::<NGrid>().unwrap().values(), vec![1, 10, 100]);
        let g: NGrid = "log:2:12:60".parse().unwrap();
        let v = g.values();
        assert_eq!((v.len(), v[0], v[59]), (60, 100, 1_000_000_000_000));
        assert_eq!(g.to_string().parse::<NGrid>().unwrap(), g);
        assert!("log:2:12".parse::<NGrid>().is_err());
        assert!("1,x".parse::<NGrid>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut s = JobSpec::new(Command::Sweep);
        s.n_values = "log:2:4:5".parse().unwrap();
        s.p_values = vec![0.1, 1.5, 3.0];
        s.output_path = Some("out.csv".into());
        let text = serde_json::to_string(&s).unwrap();
        let back: JobSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
