//! `symsq`: command-line experiments on additive twists of symmetric-square
//! GL(3) coefficients. Every subcommand writes CSV (stdout or `--out`).
//!
//! Exit codes: 0 success, 2 invalid input or configuration, 3 a numerical
//! tolerance was not met.

// `!(x >= y)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "symsq", version, about = "Twisted sums of symmetric-square coefficients", long_about = None)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Global {
    /// Hecke eigenvalue file (`tj`, `precision` header, then `p lambda_p` lines)
    #[arg(long, global = true, default_value = "data/maass_even_r13.7798.txt")]
    pub data: PathBuf,
    /// Write CSV here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Tolerance for the subcommand's pass/fail check
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for sampled inputs
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Reject eigenvalues with |lambda_p| > 2 instead of warning
    #[arg(long, global = true)]
    pub strict_ramanujan: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a data file and list its prime eigenvalues
    Ingest,
    /// lambda(n) and A(1,n) for n <= N
    Coeffs {
        #[arg(long)]
        n: u64,
    },
    /// Sharp or smoothly weighted twisted sum
    Sum {
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        alpha: f64,
        /// Weight by the standard bump on [N, 2N] instead of cutting at N
        #[arg(long)]
        smooth: bool,
    },
    /// Both sides of the Voronoi formula, one row per (a, c)
    VoronoiCheck {
        #[arg(long, value_delimiter = ',', required = true)]
        c: Vec<u64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        a: Vec<i64>,
        #[arg(long = "N")]
        n: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        /// Use seeded random eigenvalues (a negative control)
        #[arg(long)]
        synthetic: bool,
    },
    /// Psi_+ and Psi_- with their bound envelope
    Psi {
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<f64>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long = "N")]
        n: f64,
        #[arg(long = "T")]
        t: f64,
        #[arg(long, default_value_t = symsq_core::transforms::DEFAULT_SIGMA, allow_hyphen_values = true)]
        sigma: f64,
    },
    /// max over alpha of |S(N)| on a dyadic grid, with the fitted exponent
    ExponentScan {
        #[arg(long)]
        config: PathBuf,
    },
    /// Moment sums and their growth relative to x^1.05
    Moments {
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        /// sym2-4th, 8th, A2 or A4
        #[arg(long)]
        kind: String,
    },
    /// Dirichlet kernel: Fourier coefficients and L1 norm against 7 + log x
    KernelCheck {
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let run = match cli.command {
        Command::Ingest => commands::ingest(g),
        Command::Coeffs { n } => commands::coeffs(g, n),
        Command::Sum { n, alpha, smooth } => commands::sum(g, n, alpha, smooth),
        Command::VoronoiCheck { c, a, n, theta, synthetic } => commands::voronoi_check(g, &c, &a, n, theta, synthetic),
        Command::Psi { x, theta, n, t, sigma } => commands::psi(g, &x, theta, n, t, sigma),
        Command::ExponentScan { config } => commands::exponent_scan(g, &config),
        Command::Moments { x, kind } => commands::moments(g, &x, &kind),
        Command::KernelCheck { x } => commands::kernel_check(g, &x),
    };
    match run {
        Ok(commands::Outcome::Pass) => ExitCode::SUCCESS,
        Ok(commands::Outcome::ToleranceFailure(msg)) => {
            eprintln!("symsq: tolerance not met: {msg}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("symsq: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
