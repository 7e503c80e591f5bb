//! `entrodyn` command line: degrees, entropy, autoeq and ht jobs.

pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use entrodyn_core::endo_actions::{ActionError, EndoAction};
use entrodyn_core::entropy_lab::{
    entropy_function_t, spectral_tolerance, standard_autoeq_entropy, verify_theorem1, EntropyError, Tolerances,
    DEFAULT_N_MAX,
};
use entrodyn_core::exact_linalg::LinalgError;
use entrodyn_core::rr_engine::RrError;
use entrodyn_core::variety_models::VarietyModel;
use serde::Serialize;

use config::JobConfig;
use report::{num, AutoeqJson, DegreesReport, EntropyJson, HtJson, Params};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_AMBIGUOUS: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;
pub const EXIT_NOT_AMPLE: i32 = 5;
pub const EXIT_UNSUPPORTED: i32 = 6;

pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_ENTROPY_H_TOL: f64 = 1e-4;
pub const DEFAULT_AUTOEQ_H_TOL: f64 = 1e-3;

#[derive(Debug, Parser)]
#[command(name = "entrodyn", version, about = "Categorical entropy and dynamical degrees on model varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dynamical degrees d_q by the eigenvalue and intersection-sequence routes
    Degrees(JobArgs),
    /// Categorical entropy of Lf^* against log rho, log max r_q and log max d_q
    Entropy(JobArgs),
    /// Entropy of a standard autoequivalence Lf^*(- ⊗ L')[s]
    Autoeq(JobArgs),
    /// h_t of a functor on P^d over a grid of t
    Ht(JobArgs),
}

#[derive(Debug, Args)]
struct JobArgs {
    /// TOML job file
    config: PathBuf,
    #[arg(long)]
    tol: Option<f64>,
    /// Tolerance for comparisons against the extracted entropy limit
    #[arg(long)]
    h_tol: Option<f64>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t_grid: Option<Vec<f64>>,
    /// Write the JSON report here (`-` for stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

fn linalg_code(e: &LinalgError) -> i32 {
    match e {
        LinalgError::AmbiguousGrowth { .. } | LinalgError::DegenerateGrowth => EXIT_AMBIGUOUS,
        _ => EXIT_INVALID,
    }
}

fn action_code(e: &ActionError) -> i32 {
    match e {
        ActionError::Linalg(l) => linalg_code(l),
        ActionError::WindowTooShort { .. } => EXIT_USAGE,
        _ => EXIT_INVALID,
    }
}

impl From<ActionError> for Failure {
    fn from(e: ActionError) -> Self {
        Self::new(action_code(&e), e.to_string())
    }
}

impl From<EntropyError> for Failure {
    fn from(e: EntropyError) -> Self {
        let code = match &e {
            EntropyError::Linalg(l) => linalg_code(l),
            EntropyError::Action(a) | EntropyError::Rr(RrError::Action(a)) => action_code(a),
            EntropyError::NotCanonicallyAmple(_) | EntropyError::NoAntiAmpleTwist { .. } => EXIT_NOT_AMPLE,
            EntropyError::UnsupportedFunctor(_) | EntropyError::Rr(RrError::NotProjectiveSpace) => EXIT_UNSUPPORTED,
            EntropyError::TooFewTerms { .. } => EXIT_USAGE,
            _ => EXIT_INVALID,
        };
        Self::new(code, e.to_string())
    }
}

struct Job {
    config: JobConfig,
    model: Arc<VarietyModel>,
    tol: f64,
    h_tol: Option<f64>,
    n_max: u32,
    t_grid: Vec<f64>,
    out: Option<PathBuf>,
}

impl Job {
    fn load(args: &JobArgs) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(&args.config)
            .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot read {}: {e}", args.config.display())))?;
        let config = JobConfig::parse(&text)
            .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", args.config.display())))?;
        let model = config
            .build_model()
            .map_err(|e| Failure::new(EXIT_INVALID, format!("model: {e}")))?;
        let p = &config.params;
        let tol = args.tol.or(p.tol).unwrap_or(DEFAULT_TOL);
        let h_tol = args.h_tol.or(p.h_tol);
        let n_max = args.n_max.or(p.n_max).unwrap_or(DEFAULT_N_MAX);
        let t_grid = args.t_grid.clone().or_else(|| p.t_grid.clone()).unwrap_or_else(|| vec![0.0]);
        for (name, value) in [("tol", Some(tol)), ("h-tol", h_tol)] {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Failure::new(EXIT_USAGE, format!("--{name} must be a positive number, got {v}")));
                }
            }
        }
        if t_grid.is_empty() || t_grid.iter().any(|t| !t.is_finite()) {
            return Err(Failure::new(EXIT_USAGE, "--t-grid needs finite values"));
        }
        let base = args.config.parent().unwrap_or(Path::new(""));
        let out = args.out.clone().or_else(|| p.out.as_ref().map(|o| base.join(o)));
        Ok(Self {
            config,
            model,
            tol,
            h_tol,
            n_max,
            t_grid,
            out,
        })
    }

    fn action(&self) -> Result<EndoAction, Failure> {
        let cfg = self.config.action.clone().unwrap_or_default();
        let action = cfg.build(self.model.clone())?;
        action.validate()?;
        Ok(action)
    }

    fn require_action(&self) -> Result<EndoAction, Failure> {
        if self.config.action.is_none() {
            return Err(Failure::new(EXIT_USAGE, "job needs an [action] section"));
        }
        self.action()
    }

    fn params(&self, h_tol: Option<f64>, t_grid: bool) -> Params {
        Params {
            tol: num(self.tol),
            h_tol: h_tol.map(num),
            n_max: self.n_max,
            t_grid: t_grid.then(|| self.t_grid.iter().map(|&t| num(t)).collect()),
        }
    }
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    let result = match &cli.command {
        Command::Degrees(a) => Job::load(a).and_then(|job| degrees(&job, stdout)),
        Command::Entropy(a) => Job::load(a).and_then(|job| entropy(&job, stdout)),
        Command::Autoeq(a) => Job::load(a).and_then(|job| autoeq(&job, stdout)),
        Command::Ht(a) => Job::load(a).and_then(|job| ht(&job, stdout)),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn emit<R: Serialize>(job: &Job, report: &R, table: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    let json = serde_json::to_string_pretty(report).expect("report serializes") + "\n";
    let io = |e: std::io::Error| Failure::new(EXIT_USAGE, format!("write failed: {e}"));
    match &job.out {
        Some(path) if path.as_os_str() == "-" => stdout.write_all(json.as_bytes()).map_err(io)?,
        Some(path) => {
            std::fs::write(path, json).map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
            stdout.write_all(table.as_bytes()).map_err(io)?;
        }
        None => stdout.write_all(table.as_bytes()).map_err(io)?,
    }
    Ok(())
}

fn verdict_code(pass: bool) -> i32 {
    if pass {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn degrees(job: &Job, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let action = job.require_action()?;
    let report = action.degree_report(&spectral_tolerance(job.tol), job.n_max)?;
    let json = DegreesReport::new(
        job.model.name(),
        &action.degree().to_string(),
        job.params(None, false),
        &report,
        job.tol,
    );
    emit(job, &json, &json.table(), stdout)?;
    Ok(verdict_code(json.pass))
}

fn entropy(job: &Job, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let action = job.require_action()?;
    let tolerances = Tolerances {
        tol: job.tol,
        h_tol: job.h_tol.unwrap_or(DEFAULT_ENTROPY_H_TOL),
    };
    let report = verify_theorem1(&action, tolerances, job.n_max)?;
    let json = EntropyJson::new(
        job.model.name(),
        &action.degree().to_string(),
        job.params(Some(tolerances.h_tol), false),
        &report,
        job.tol,
    );
    emit(job, &json, &json.table(), stdout)?;
    Ok(verdict_code(json.pass))
}

fn autoeq(job: &Job, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let spec = job
        .config
        .autoeq
        .as_ref()
        .ok_or_else(|| Failure::new(EXIT_USAGE, "job needs an [autoeq] section"))?;
    let model = &job.model;
    if !model.canonical_ample() && !model.anticanonical_ample() {
        return Err(EntropyError::NotCanonicallyAmple(model.name().to_string()).into());
    }
    let twist = spec.twist(model).map_err(|e| Failure::new(EXIT_INVALID, e))?;
    let f = job.action()?;
    let tolerances = Tolerances {
        tol: job.tol,
        h_tol: job.h_tol.unwrap_or(DEFAULT_AUTOEQ_H_TOL),
    };
    let report = standard_autoeq_entropy(&f, &twist, spec.shift, tolerances, job.n_max)?;
    let json = AutoeqJson::new(
        model.name(),
        &twist,
        spec.shift,
        job.params(Some(tolerances.h_tol), false),
        &report,
    );
    emit(job, &json, &json.table(), stdout)?;
    Ok(verdict_code(json.pass))
}

fn ht(job: &Job, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let spec = job
        .config
        .functor
        .as_ref()
        .ok_or_else(|| Failure::new(EXIT_USAGE, "job needs a [functor] section"))?;
    let functor = spec.functor().map_err(|e| Failure::new(EXIT_UNSUPPORTED, e))?;
    let d = job
        .model
        .projective_dim()
        .ok_or_else(|| Failure::new(EXIT_UNSUPPORTED, format!("h_t needs P^d, got {}", job.model.name())))?;
    let points = entropy_function_t(d, functor, &job.t_grid, job.n_max)?;
    let json = HtJson::new(job.model.name(), functor.describe(), job.params(None, true), &points);
    emit(job, &json, &json.table(), stdout)?;
    Ok(EXIT_OK)
}
