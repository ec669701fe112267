//! Command-line front end. Every command writes JSON to stdout (or `--out`).
//!
//! Exit codes: `0` success, `1` I/O or validation failure, `2` a result that
//! contradicts the classification (an `ANOMALY` verdict or an SU(3)
//! identity breach).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::canonical::{self, CanonicalName, CanonicalObject};
use crate::classifier::{classify_with, conjugate, ClassifyError, GvcpMode, GvcpOptions, Verdict};
use crate::exterior::{ExteriorError, ExteriorForm, Vector};
use crate::json;
use crate::lifting::{self, LiftError};
use crate::sampling;
use crate::spectral::DEFAULT_CLUSTER_TOL;
use crate::su3::{check_identities, Su3Frame, Su3Residuals};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_ANOMALY: i32 = 2;

/// Pass threshold for `su3-check`.
pub const SU3_CHECK_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "gvcp",
    version,
    about = "Classify 3-forms whose contractions lie in one orbit"
)]
pub struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Deterministic,
    Sampled,
}

impl From<ModeArg> for GvcpMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Deterministic => GvcpMode::Deterministic,
            ModeArg::Sampled => GvcpMode::Sampled,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a 3-form read from a JSON file.
    Analyze {
        path: PathBuf,
        /// Defaults to deterministic for n ≤ 8, sampled above.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Spectral clustering tolerance.
        #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL, value_parser = positive_float)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Unit vectors drawn in sampled mode.
        #[arg(long, default_value_t = crate::classifier::DEFAULT_SAMPLES, value_parser = positive_count)]
        samples: usize,
    },
    /// Print a canonical form (TAU0, SIGMA0, VOL3, A0, OMEGA0, PSI_PLUS, PSI_MINUS).
    Canonical { name: CanonicalName },
    /// Lift an SU(3)-type 3-form on ℝ⁶ to a G₂-type form on ℝ⁷.
    Lift { path: PathBuf },
    /// Restrict a 3-form to the orthogonal complement of a unit vector.
    Restrict {
        path: PathBuf,
        /// Comma-separated coordinates, e.g. "0,0,0,0,0,0,1".
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        vector: Vector,
    },
    /// Pull a form back by a seeded random orthogonal matrix.
    Conjugate {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the SU(3) identities at the basis and at random vectors.
    Su3Check {
        #[arg(long, default_value_t = crate::classifier::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Lift(#[from] LiftError),
}

fn positive_float(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("expected a positive number, got {s}"))
    }
}

fn positive_count(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v == 0 {
        return Err("expected at least one sample".into());
    }
    Ok(v)
}

pub fn parse_vector(s: &str) -> Result<Vector, String> {
    let entries = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad coordinate {:?}: {e}", t.trim()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Vector::new(entries).map_err(|e| e.to_string())
}

/// What a command produced: JSON text and the exit code it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Self {
            text,
            code: EXIT_OK,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn read_form(path: &Path) -> Result<ExteriorForm, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    json::parse_form(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Serialize)]
struct Su3CheckReport {
    samples: usize,
    seed: u64,
    tolerance: f64,
    passed: bool,
    basis_max_residual: f64,
    random_max_residual: f64,
    max_residual: f64,
    residuals: Su3Residuals,
}

fn su3_check(samples: usize, seed: u64) -> Result<Output, CliError> {
    let frame = Su3Frame::standard();
    let mut basis = Su3Residuals::default();
    for i in 1..=6 {
        basis = basis.merge(&check_identities(&frame, &Vector::basis(6, i))?);
    }
    let mut random = Su3Residuals::default();
    let mut rng = sampling::rng(seed);
    for _ in 0..samples {
        let x = sampling::random_vector(&mut rng, 6);
        random = random.merge(&check_identities(&frame, &x)?);
    }
    let all = basis.merge(&random);
    let passed = all.max() <= SU3_CHECK_TOLERANCE;
    Ok(Output {
        text: to_json(&Su3CheckReport {
            samples,
            seed,
            tolerance: SU3_CHECK_TOLERANCE,
            passed,
            basis_max_residual: basis.max(),
            random_max_residual: random.max(),
            max_residual: all.max(),
            residuals: all,
        }),
        code: if passed { EXIT_OK } else { EXIT_ANOMALY },
    })
}

/// Runs one command and returns its output without touching stdout.
pub fn execute(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Analyze {
            path,
            mode,
            tol,
            seed,
            samples,
        } => {
            let tau = read_form(path)?;
            let opts = GvcpOptions {
                mode: mode.map(Into::into),
                tolerance: *tol,
                samples: *samples,
                seed: *seed,
            };
            let report = classify_with(&tau, &opts)?;
            let code = if report.verdict == Verdict::Anomaly {
                EXIT_ANOMALY
            } else {
                EXIT_OK
            };
            Ok(Output {
                text: to_json(&report),
                code,
            })
        }
        Command::Canonical { name } => {
            let form = match canonical::canonical(*name) {
                CanonicalObject::Form(f) => f,
                CanonicalObject::Endo(a) => a.to_two_form(),
            };
            Ok(Output::ok(json::print_form(&form)))
        }
        Command::Lift { path } => {
            let lifted = lifting::lift(&read_form(path)?)?;
            Ok(Output::ok(json::print_form(&lifted)))
        }
        Command::Restrict { path, vector } => {
            let restricted = lifting::restrict(&read_form(path)?, vector)?;
            Ok(Output::ok(json::print_form(&restricted)))
        }
        Command::Conjugate { path, seed } => {
            let form = read_form(path)?;
            let q = sampling::random_orthogonal(*seed, form.dim());
            Ok(Output::ok(json::print_form(&conjugate(&form, &q)?)))
        }
        Command::Su3Check { samples, seed } => su3_check(*samples, *seed),
    }
}

/// Parses `args`, runs the command, writes output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_FAILURE
            } else {
                EXIT_OK
            };
        }
    };
    let output = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAILURE;
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &output.text) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_FAILURE;
            }
        }
        None => print!("{}", output.text),
    }
    output.code
}
