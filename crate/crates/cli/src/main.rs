//! `cstlab` — reproducible experiments on the arithmetic statistics of
//! Frobenius traces for products of elliptic curves.
//!
//! Exit codes: 0 success, 1 validation error, 2 resource limit,
//! 3 numerical-accuracy failure (including `verify` finding a violation).

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cstlab::error::Error;
use cstlab::harness::ReportFormat;

use config::Overrides;

#[derive(Parser, Debug)]
#[command(
    name = "cstlab",
    version,
    about = "Trace sweeps, Sato-Tate densities, and Lang-Trotter constants for split abelian surfaces"
)]
struct Cli {
    /// TOML configuration file; flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// First curve as `a1,a2,a3,a4,a6`.
    #[arg(long, global = true)]
    curve1: Option<String>,

    /// Second curve as `a1,a2,a3,a4,a6`.
    #[arg(long, global = true)]
    curve2: Option<String>,

    /// Sweep bound.
    #[arg(long, global = true)]
    xmax: Option<u64>,

    /// Comma-separated list of trace targets t (nonzero).
    #[arg(long, global = true, allow_hyphen_values = true)]
    t: Option<String>,

    /// Comma-separated list of moduli m.
    #[arg(long, global = true)]
    m: Option<String>,

    /// Interval `lo,hi` (repeatable).
    #[arg(long = "interval", global = true, allow_hyphen_values = true)]
    interval: Vec<String>,

    /// Entanglement level m_A (default 1; see README caveat).
    #[arg(long = "mA", global = true)]
    m_a: Option<u64>,

    /// Euler-product cutoff prime.
    #[arg(long, global = true)]
    cutoff: Option<u64>,

    /// Master seed for all stochastic components.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output path (stdout when omitted; `sweep` falls back to the
    /// configured cache path).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format for `lt` and `cst`.
    #[arg(long, global = true, default_value = "csv")]
    format: String,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Tabulate the marginal density by all three routes.
    Density {
        /// Number of grid points on [-1, 1].
        #[arg(long, default_value_t = 201)]
        grid: usize,
    },
    /// Euler product F(t) with per-prime factors and tail bound (JSON).
    Ffactor,
    /// Compute the trace cache for the configured pair.
    Sweep,
    /// Exact-trace counts vs the conditional asymptotic, per decade.
    Lt,
    /// Equidistribution error reports over the (t, m, I) grid.
    Cst,
    /// Monte-Carlo validation of the sampler against the density (JSON).
    Mc {
        /// Number of sample pairs.
        #[arg(long, default_value_t = 1_000_000)]
        pairs: usize,
    },
    /// Run the full cross-formula invariant suite.
    Verify,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Resource(_) | Error::Io { .. } => 2,
        Error::Accuracy { .. } | Error::Ambiguous { .. } => 3,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let overrides = Overrides {
        curve1: cli.curve1.clone(),
        curve2: cli.curve2.clone(),
        xmax: cli.xmax,
        t: cli.t.clone(),
        m: cli.m.clone(),
        intervals: cli.interval.clone(),
        m_a: cli.m_a,
        cutoff: cli.cutoff,
        seed: cli.seed,
        threads: cli.threads,
    };
    let cfg = config::parse_config(cli.config.as_deref(), &overrides)?;
    let format: ReportFormat = cli.format.parse()?;
    let out = cli.out.as_deref();

    match cli.cmd {
        Cmd::Density { grid } => commands::density(grid, out)?,
        Cmd::Ffactor => commands::ffactor(&cfg, out)?,
        Cmd::Sweep => commands::sweep(&cfg, out)?,
        Cmd::Lt => commands::lt(&cfg, out, format)?,
        Cmd::Cst => commands::cst(&cfg, out, format)?,
        Cmd::Mc { pairs } => commands::mc(&cfg, pairs, out)?,
        Cmd::Verify => {
            if !commands::verify(&cfg)? {
                return Ok(3);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let payload = serde_json::json!({
                "error": { "kind": e.kind(), "message": e.to_string() }
            });
            eprintln!("{payload}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
