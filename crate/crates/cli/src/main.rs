//! `invdec`: invariant decomposition, exp, log and factorization of small
//! complex matrices from the command line.
//!
//! Every subcommand prints one JSON document on standard output, errors
//! included. Exit codes: 0 success, 2 invalid input, 3 numerical failure.

mod commands;
mod document;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use invdec::oracle::RngSeed;
use invdec::{Error, LogBranch, Tolerances};
use invdec_bench::{Regime, Task};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(
    name = "invdec",
    version,
    about = "Invariant decomposition of small complex matrices"
)]
struct Cli {
    /// Override one tolerance, e.g. `fact_tol=1e-8`. Repeatable.
    #[arg(long = "tol-override", value_name = "KEY=VALUE", global = true)]
    tol_override: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Matrix document path, or `-` for standard input.
    #[arg(default_value = "-")]
    input: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DecomposeMethod {
    Eigen,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExpMethod {
    Invariant,
    Reference,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LogMethod {
    Invariant,
    Reference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SampleKind {
    Algebra,
    Group,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Split a matrix into commuting simple parts.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Accept any diagonalizable n×n matrix, 3 <= n <= 8.
        #[arg(long)]
        nxn: bool,
        /// Reject input that is not traceless skew-Hermitian.
        #[arg(long)]
        require_su3: bool,
        #[arg(long, value_enum, default_value = "eigen")]
        method: DecomposeMethod,
    },
    /// Exponential of an su(3) element.
    Exp {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "invariant")]
        method: ExpMethod,
    },
    /// Logarithm of an SU(3) element.
    Log {
        #[command(flatten)]
        input: Input,
        /// Branch indices `k1,k2,k3`.
        #[arg(long, value_parser = parse_branch, allow_hyphen_values = true)]
        branch: Option<LogBranch>,
        #[arg(long, value_enum, default_value = "invariant")]
        method: LogMethod,
    },
    /// Factorization into commuting Euler factors, with grades.
    Factor {
        #[command(flatten)]
        input: Input,
    },
    /// Timing and accuracy report.
    Bench {
        /// One task; all when absent.
        #[arg(long)]
        task: Option<Task>,
        /// One regime; all when absent.
        #[arg(long)]
        regime: Option<Regime>,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Zero the timing fields, leaving a reproducible document.
        #[arg(long)]
        no_timings: bool,
    },
    /// `exp(iθλ_a)` for a Gell-Mann matrix.
    Gellmann {
        #[arg(long)]
        a: usize,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
    },
    /// Seeded random algebra or group element, as a matrix document.
    Sample {
        #[arg(long, value_enum)]
        kind: SampleKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Algebra samples only: standard deviation of each coefficient.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
}

fn parse_branch(s: &str) -> Result<LogBranch, String> {
    let k: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let k: [i64; 3] = k
        .try_into()
        .map_err(|v: Vec<i64>| format!("expected 3 indices, got {}", v.len()))?;
    Ok(LogBranch::new(k))
}

/// Failure of a subcommand, already classified by exit code.
#[derive(Debug)]
pub enum Failure {
    Library(Error),
    /// CLI-level input problem: unreadable file, malformed JSON, bad flags.
    Input {
        code: &'static str,
        message: String,
    },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Library(e) if !e.is_input_error() => 3,
            _ => 2,
        }
    }

    fn document(&self) -> serde_json::Value {
        let (code, message) = match self {
            Failure::Library(e) => (e.code(), e.to_string()),
            Failure::Input { code, message } => (*code, message.clone()),
        };
        json!({ "error": { "code": code, "message": message, "exit_code": self.exit_code() } })
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let mut tol = Tolerances::default();
    for spec in &cli.tol_override {
        tol.apply_override(spec)?;
    }
    match cli.command {
        Command::Decompose {
            input,
            nxn,
            require_su3,
            method,
        } => commands::decompose(
            &input.input,
            nxn,
            require_su3,
            method == DecomposeMethod::ClosedForm,
            &tol,
        ),
        Command::Exp { input, method } => commands::exp(
            &input.input,
            method != ExpMethod::Reference,
            method != ExpMethod::Invariant,
            &tol,
        ),
        Command::Log { input, branch, method } => {
            commands::log(&input.input, branch, method == LogMethod::Reference, &tol)
        }
        Command::Factor { input } => commands::factor(&input.input, &tol),
        Command::Bench {
            task,
            regime,
            n,
            seed,
            format,
            no_timings,
        } => commands::bench(
            task,
            regime,
            n,
            RngSeed(seed),
            format != Format::Table,
            format != Format::Json,
            no_timings,
        ),
        Command::Gellmann { a, theta } => commands::gellmann(a, theta),
        Command::Sample { kind, seed, scale } => commands::sample(kind == SampleKind::Group, RngSeed(seed), scale),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let f = Failure::Input {
                code: "InvalidArgument",
                message: e
                    .to_string()
                    .lines()
                    .next()
                    .unwrap_or_default()
                    .trim_start_matches("error: ")
                    .to_string(),
            };
            print!("{}", document::render(&f.document()));
            return ExitCode::from(f.exit_code());
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            print!("{}", document::render(&f.document()));
            ExitCode::from(f.exit_code())
        }
    }
}
