//! Command-line front end: single points, sweeps, the large-n entropy
//! figure, the acceptance suite and constant tables.

mod output;
mod run;
mod spec;
mod svg;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::spec::{parse_p_list, BackendArg, Command, Format, JobSpec, NGrid, NormArg};

/// Environment variable holding the default quadrature tolerance.
const TOL_ENV: &str = "HERMITE_RENYI_TOL";

#[derive(Parser)]
#[command(name = "hermite-renyi", version, about = "Rényi entropies of harmonic-oscillator states")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// One (n, p) point.
    Compute(Opts),
    /// A table over an n × p grid.
    Sweep(Opts),
    /// R_p(n) for p = 3/2, 2, 3 on 60 log-spaced n in [1e2, 1e12], with an SVG chart.
    Figure2(Opts),
    /// Run the acceptance suite; exits 1 if any criterion fails.
    Validate(Opts),
    /// Tables of the constants c_p (p < 2) and C_p (p > 2).
    Constants(Opts),
}

impl Cmd {
    fn split(&self) -> (Command, &Opts) {
        match self {
            Cmd::Compute(o) => (Command::Compute, o),
            Cmd::Sweep(o) => (Command::Sweep, o),
            Cmd::Figure2(o) => (Command::Figure2, o),
            Cmd::Validate(o) => (Command::Validate, o),
            Cmd::Constants(o) => (Command::Constants, o),
        }
    }
}

#[derive(Args)]
struct Opts {
    /// Degrees: `0,1,5` or `log:LO:HI:COUNT`.
    #[arg(long, value_parser = |s: &str| s.parse::<NGrid>())]
    n: Option<NGrid>,
    /// Exponents, comma separated.
    #[arg(long, value_parser = PList::parse)]
    p: Option<PList>,
    #[arg(long, value_enum, default_value = "orthonormal")]
    normalization: NormArg,
    /// Relative quadrature tolerance.
    #[arg(long, env = TOL_ENV, default_value_t = hermite_renyi::quadrature::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<String>,
    /// Where figure2 writes its chart (default: --out with an .svg extension).
    #[arg(long)]
    svg: Option<String>,
    /// Zone exponent θ in (0, 1/6).
    #[arg(long, default_value_t = hermite_renyi::hermite::DEFAULT_THETA)]
    theta: f64,
    /// Turning-band constant M.
    #[arg(long = "m-cut", default_value_t = hermite_renyi::hermite::DEFAULT_M_CUT)]
    m_cut: f64,
    /// Backend (default: auto; asymptotic for figure2).
    #[arg(long, value_enum)]
    backend: Option<BackendArg>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Print the canonical job spec as JSON and exit.
    #[arg(long)]
    print_spec: bool,
    /// Report errors on stderr as JSON.
    #[arg(long)]
    error_json: bool,
}

#[derive(Clone)]
struct PList(Vec<f64>);

impl PList {
    fn parse(s: &str) -> Result<Self, String> {
        parse_p_list(s).map(PList)
    }
}

fn job_spec(command: Command, o: &Opts) -> JobSpec {
    let mut spec = JobSpec::new(command);
    let (n, p, backend) = match command {
        Command::Figure2 => ("log:2:12:60", "1.5,2,3", BackendArg::Asymptotic),
        Command::Sweep => ("1,10,100", "0.5,1.5,2,3", BackendArg::Auto),
        Command::Constants => ("0", "0.5,1,1.5,2.5,3,4,5,6", BackendArg::Auto),
        Command::Compute | Command::Validate => ("0", "2", BackendArg::Auto),
    };
    spec.n_values = o.n.clone().unwrap_or_else(|| n.parse().expect("default grid"));
    spec.p_values = o.p.clone().map(|p| p.0).unwrap_or_else(|| parse_p_list(p).expect("default p"));
    spec.normalization = o.normalization;
    spec.tol = o.tol;
    spec.output_format = o.format;
    spec.output_path = o.out.clone();
    spec.theta = o.theta;
    spec.m_cut = o.m_cut;
    spec.backend = o.backend.unwrap_or(backend);
    spec
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: &'a str,
    exit_code: i32,
}

fn fail(kind: &str, message: &str, code: i32, as_json: bool) -> ExitCode {
    if as_json {
        let body = ErrorJson {
            error: ErrorBody {
                kind,
                message,
                exit_code: code,
            },
        };
        eprintln!("{}", serde_json::to_string(&body).expect("plain data serializes"));
    } else {
        eprintln!("error: {message}");
    }
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let wants_json = std::env::args().any(|a| a == "--error-json");
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if wants_json => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
            return fail("spec", first, 2, true);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    let (command, opts) = cli.command.split();
    let spec = job_spec(command, opts);
    if opts.print_spec {
        #[derive(Serialize)]
        struct Printed<'a> {
            canonical: String,
            spec: &'a JobSpec,
        }
        print!("{}", output::json(&Printed { canonical: spec.canonical(), spec: &spec }));
        return ExitCode::SUCCESS;
    }
    if let Some(t) = opts.threads {
        if t == 0 {
            return fail("spec", "--threads must be positive", 2, opts.error_json);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            return fail("spec", &e.to_string(), 2, opts.error_json);
        }
    }
    match run::run(&spec, opts.svg.as_deref()) {
        Ok(outcome) if outcome.passed => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => fail(e.kind(), e.message(), e.exit_code(), opts.error_json),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[String]) -> JobSpec {
        let cli = Cli::try_parse_from(std::iter::once("hermite-renyi".to_string()).chain(args.iter().cloned()))
            .unwrap();
        let (command, o) = cli.command.split();
        job_spec(command, o)
    }

    #[test]
    fn canonical_form_round_trips() {
        let inputs: [&[&str]; 4] = [
            &["compute", "--n", "0", "--p", "2"],
            &["sweep", "--p", "1", "--n", "1,10,100", "--out", "x.csv", "--tol", "1e-9"],
            &["figure2"],
            &["constants", "--p", "0.3,2.5", "--format", "json", "--theta", "0.05", "--m-cut", "3"],
        ];
        for args in inputs {
            let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
            let spec = parse(&args);
            let canonical = spec.to_args();
            let again = parse(&canonical);
            assert_eq!(again, spec);
            assert_eq!(again.canonical(), spec.canonical());
        }
    }
}
