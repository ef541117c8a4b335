//! `linecut` — exact certificates and numerical cross-checks for the blowup
//! of projective space along a line.
//!
//! Subcommands: `slope` tabulates both slopes and their gap over
//! polarizations; `instability-certify` machine-proves slope instability;
//! `extremal` dumps the extremal-metric datum; `verify` certifies the
//! regularity hypotheses at one parameter; `epsilon0` searches for the
//! largest certifiable cut depth; `sample` emits pointwise geometry on an
//! interior grid.
//!
//! Exit codes: 0 success/pass, 1 certificate or verification failure,
//! 2 usage error, 3 construction error.

mod cmds;
mod out;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug)]
pub struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: cmds::EXIT_USAGE,
        }
    }
}

impl From<linecut::Error> for CliError {
    fn from(e: linecut::Error) -> Self {
        CliError {
            code: cmds::exit_code_for(&e),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(format!("io error: {e}"))
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Parser)]
#[command(
    name = "linecut",
    version,
    about = "Exact slope-stability certificates and extremal-metric data for the blowup of projective space along a line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate slope, quotient slope at the Seshadri constant, and their gap
    Slope {
        /// Complex dimension (>= 3)
        #[arg(long)]
        n: usize,
        /// Single cut depth as a rational "p/q"
        #[arg(long)]
        eps: Option<String>,
        /// Also scan k interior grid depths i/(k+1), i = 1..k
        #[arg(long, value_name = "k")]
        eps_grid: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Sturm-certified machine proof of slope instability
    InstabilityCertify {
        /// Dimension or inclusive range, e.g. "4" or "3..8"
        #[arg(long)]
        n: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Negative-control hook: tamper with the certified polynomial
        #[arg(long, hide = true)]
        tamper: bool,
    },
    /// Dump the extremal-metric datum (constants and polynomials) as JSON
    Extremal {
        #[arg(long)]
        n: usize,
        /// Cut depth as a rational "p/q"
        #[arg(long)]
        eps: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify the regularity hypotheses at one (n, eps)
    Verify {
        #[arg(long)]
        n: usize,
        /// Cut depth as a rational "p/q"
        #[arg(long)]
        eps: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan cut depths and bisect toward the largest certifiable one
    Epsilon0 {
        #[arg(long)]
        n: usize,
        /// Grid spacing as a rational "p/q", at most 1/10
        #[arg(long)]
        resolution: String,
        /// Bisection steps after the grid scan
        #[arg(long, default_value_t = 0)]
        refine: u32,
        #[arg(long)]
        jobs: Option<usize>,
        /// JSON output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optional CSV of per-depth outcomes
        #[arg(long)]
        out_csv: Option<PathBuf>,
    },
    /// Pointwise geometry samples on an interior grid (CSV)
    Sample {
        #[arg(long)]
        n: usize,
        /// Cut depth: rational "p/q", or a float (converted, with a warning)
        #[arg(long)]
        eps: String,
        /// Grid points per axis
        #[arg(long, default_value_t = 5)]
        grid: usize,
        /// Finite-difference step
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Slope {
            n,
            eps,
            eps_grid,
            format,
            out,
            jobs,
        } => cmds::cmd_slope(n, eps, eps_grid, format, out, jobs),
        Command::InstabilityCertify { n, out, tamper } => {
            cmds::cmd_instability_certify(&n, out, tamper)
        }
        Command::Extremal { n, eps, out } => cmds::cmd_extremal(n, &eps, out),
        Command::Verify { n, eps, out } => cmds::cmd_verify(n, &eps, out),
        Command::Epsilon0 {
            n,
            resolution,
            refine,
            jobs,
            out,
            out_csv,
        } => cmds::cmd_epsilon0(n, &resolution, refine, jobs, out, out_csv),
        Command::Sample {
            n,
            eps,
            grid,
            step,
            out,
        } => cmds::cmd_sample(n, &eps, grid, step, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
