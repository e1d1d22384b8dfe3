//! Command-line interface. [`run`] is the whole program minus process
//! setup, so tests can drive it directly.
//!
//! Exit codes: 0 success, 1 unreadable or malformed input (including usage
//! errors), 2 input outside the supported class, 3 search budget exceeded,
//! 4 internal invariant violation.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{digest, Report, SCHEMA_VERSION};

use crate::error::Error;

#[derive(Debug, Parser)]
#[command(name = "derivkit", version, about = "Simplicity and isotropy of polynomial derivations over Q")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed recorded in the report and passed to the oracles.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PolyPair {
    /// The coefficient a(X).
    #[arg(long = "a", allow_hyphen_values = true)]
    a: String,
    /// The inhomogeneous term b(X).
    #[arg(long = "b", allow_hyphen_values = true)]
    b: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Class {
    /// Two-variable Y-degree ≥ 2, then Shamsuddin, then affine search.
    Auto,
    Shamsuddin,
    Ydegree,
    Affine,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Comma-separated coefficient grid, e.g. "-1,0,1/2,2".
    #[arg(long, default_value = "-2,-1,0,1,2", allow_hyphen_values = true)]
    grid: String,
    /// Degree bound for polynomial tails in X.
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    /// Maximum number of candidates to visit.
    #[arg(long, default_value_t = 2_000_000)]
    budget: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide simplicity of a Shamsuddin derivation (Lequain's criterion).
    Simple { file: PathBuf },
    /// Show the canonical Shamsuddin form.
    Canonical { file: PathBuf },
    /// Lequain's division sequence and P(a, b).
    Pab(PolyPair),
    /// Solve Z' = aZ + b in Q[X].
    Psolve(PolyPair),
    /// Compute the isotropy group.
    Isotropy {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Class::Auto)]
        class: Class,
        /// Degree bound for the translations e(X) of the affine search.
        #[arg(long, default_value_t = 2)]
        deg_bound: usize,
        /// Fail with exit code 2 unless the result is the complete group.
        #[arg(long)]
        require_complete: bool,
    },
    /// Print rho d rho^-1.
    Conjugate {
        file: PathBuf,
        /// Automorphism file with rho(v) and rhoinv(v) lines.
        #[arg(long = "auto")]
        auto: PathBuf,
        /// Derive the inverse of an affine automorphism instead of reading it.
        #[arg(long)]
        affine: bool,
    },
    /// Decide whether the principal ideal (g) is d-stable.
    Stable {
        file: PathBuf,
        #[arg(long = "gen", allow_hyphen_values = true)]
        generator: String,
    },
    /// Brute-force cross-checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run one file-based command over several files, in order.
    Batch {
        #[arg(long, value_enum, default_value_t = BatchCommand::Simple)]
        command: BatchCommand,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Undetermined coefficients for Z' = aZ + b.
    Psolve {
        #[command(flatten)]
        pair: PolyPair,
        /// Defaults to a bound that makes the search complete.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Enumerate affine isotropy elements over a grid.
    Isotropy {
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Search for a stable principal ideal over a grid.
    Ideal {
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BatchCommand {
    Simple,
    Canonical,
    Isotropy,
}

/// A failed command: exit code and message for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::NotAutomorphism(_) | Error::MissingImage(_) | Error::ForeignVariable(_) => 1,
            Error::BudgetExceeded { .. } => 3,
            Error::InvariantViolation(_) => 4,
            Error::DivisionByZero
            | Error::RingMismatch
            | Error::ZeroGenerator
            | Error::Precondition(_)
            | Error::Unsupported(_) => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

/// What a command produced, before formatting.
pub(crate) struct Outcome {
    command: &'static str,
    inputs: Vec<Vec<u8>>,
    verdict: serde_json::Value,
    witness: serde_json::Value,
    completeness: Option<&'static str>,
    text: String,
}

impl Outcome {
    fn report(&self, seed: u64, started: Instant) -> Report {
        let inputs: Vec<&[u8]> = self.inputs.iter().map(Vec::as_slice).collect();
        Report {
            schema_version: SCHEMA_VERSION,
            command: self.command.to_string(),
            input_digest: digest(&inputs),
            verdict: self.verdict.clone(),
            witness: self.witness.clone(),
            completeness: self.completeness,
            seed,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }
}

fn emit(outcome: &Outcome, json: bool, seed: u64, started: Instant, out: &mut dyn Write) -> std::io::Result<()> {
    if json {
        let line = serde_json::to_string(&outcome.report(seed, started)).expect("reports serialize");
        writeln!(out, "{line}")
    } else {
        write!(out, "{}", outcome.text)
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let started = Instant::now();
    let results: Vec<(Option<String>, Result<Outcome, Failure>)> = match &cli.command {
        Command::Batch { command, files } => files
            .iter()
            .map(|f| {
                let res = match command {
                    BatchCommand::Simple => commands::simple(f),
                    BatchCommand::Canonical => commands::canonical(f),
                    BatchCommand::Isotropy => commands::isotropy(f, Class::Auto, 2, false),
                };
                (Some(f.display().to_string()), res)
            })
            .collect(),
        other => vec![(None, dispatch(other, cli.seed))],
    };
    let mut code = 0;
    for (label, result) in results {
        match result {
            Ok(outcome) => {
                if let (Some(label), false) = (&label, cli.json) {
                    let _ = writeln!(out, "== {label} ==");
                }
                if emit(&outcome, cli.json, cli.seed, started, out).is_err() {
                    return 1;
                }
            }
            Err(f) => {
                let _ = match &label {
                    Some(label) => writeln!(err, "error: {label}: {}", f.message),
                    None => writeln!(err, "error: {}", f.message),
                };
                code = code.max(f.code);
            }
        }
    }
    code
}

fn dispatch(command: &Command, seed: u64) -> Result<Outcome, Failure> {
    match command {
        Command::Simple { file } => commands::simple(file),
        Command::Canonical { file } => commands::canonical(file),
        Command::Pab(p) => commands::pab(&p.a, &p.b),
        Command::Psolve(p) => commands::psolve(&p.a, &p.b),
        Command::Isotropy { file, class, deg_bound, require_complete } => {
            commands::isotropy(file, *class, *deg_bound, *require_complete)
        }
        Command::Conjugate { file, auto, affine } => commands::conjugate(file, auto, *affine),
        Command::Stable { file, generator } => commands::stable(file, generator),
        Command::Oracle(OracleCommand::Psolve { pair, max_degree }) => {
            commands::oracle_psolve(&pair.a, &pair.b, *max_degree)
        }
        Command::Oracle(OracleCommand::Isotropy { file, search }) => {
            commands::oracle_isotropy(file, &search.grid, search.max_degree, search.budget, seed)
        }
        Command::Oracle(OracleCommand::Ideal { file, search }) => {
            commands::oracle_ideal(file, &search.grid, search.max_degree, search.budget, seed)
        }
        Command::Batch { .. } => unreachable!("handled by run"),
    }
}
