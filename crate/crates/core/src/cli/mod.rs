//! Command-line front end.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success (for `certify`: CERTIFIED) |
//! | 1 | `certify` returned INCONCLUSIVE |
//! | 2 | usage, parse error, unknown name or invalid input |
//! | 3 | permutation cap or search budget exceeded |
//! | 4 | tropical rank above 3 |
//! | 5 | field has at most three elements |
//! | 6 | lift construction failed |
//! | 7 | certificate verification failed |

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONCLUSIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_RANK: i32 = 4;
pub const EXIT_CAPACITY: i32 = 5;
pub const EXIT_CONSTRUCTION: i32 = 6;
pub const EXIT_VERIFY: i32 = 7;

#[derive(Debug, Parser)]
#[command(name = "troprank", version, about = "Tropical rank, rank-3 lifts and Kapranov-rank lower bounds")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Worker threads for the parallel searches (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Largest square submatrix whose permanent is enumerated.
    #[arg(long, global = true, default_value_t = crate::tropical::DEFAULT_PERM_CAP)]
    pub cap: usize,
    /// Node budget of the obstruction search (default: $TROPRANK_BUDGET or 2^26).
    #[arg(long, global = true)]
    pub budget: Option<u128>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the tropical rank of a matrix.
    Troprank {
        /// Matrix document path, `-` for stdin, or `builtin:B` / `builtin:D`.
        input: String,
    },
    /// Build and self-verify a lift of rank at most 3.
    Lift {
        input: String,
        /// Coefficient field (`Q`, `GF4`, `F<p>`); defaults to the document's field.
        #[arg(long)]
        field: Option<String>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a lift certificate from scratch.
    Verify { certificate: PathBuf },
    /// Search for a first-order obstruction to Kapranov rank at most `rank`.
    Certify {
        input: String,
        #[arg(long, default_value_t = 3)]
        rank: usize,
        #[arg(long)]
        field: Option<String>,
        /// Fix row R and column C of leading coefficients to 1, as `R,C`
        /// (default: last row and last column).
        #[arg(long)]
        gauge: Option<String>,
        /// Write the full report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the full report on stdout instead of the verdict line.
        #[arg(long)]
        json: bool,
    },
    /// Print a seeded 5×N matrix of tropical rank at most 3.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        entry_bound: i64,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Print one of the built-in matrices `B` or `D`.
    Examples { name: String },
}

/// Maps library errors onto the exit-code contract.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Domain(_) | Error::Precondition(_) | Error::Unsupported(_) => EXIT_USAGE,
        Error::Size { .. } | Error::Resource { .. } => EXIT_RESOURCE,
        Error::Capacity { .. } => EXIT_CAPACITY,
        Error::Construction(_) | Error::Invariant(_) => EXIT_CONSTRUCTION,
    }
}

/// What a command produced: exit code and the text for both streams.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { code, stdout: String::new(), stderr }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::fail(exit_code(&e), format!("error: {e}"))
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK { Outcome::ok(text) } else { Outcome::fail(code, text) };
        }
    };
    let jobs = cli.global.jobs;
    crate::par::with_jobs(jobs, move || commands::dispatch(&cli))
}

/// Runs the command and writes its output; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let o = execute(args);
    let _ = out.write_all(o.stdout.as_bytes());
    let _ = err.write_all(o.stderr.as_bytes());
    o.code
}
