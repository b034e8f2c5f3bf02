//! Subcommand implementations. Every command is a pure function of the
//! resolved configuration and its input files.

use std::io::Write;
use std::path::Path;

use cstlab::density::{
    phi_closed, phi_convolution_oracle, phi_marginal_quadrature, reconciliation_constant,
};
use cstlab::ec::{read_records_path, trace_sweep, write_records_path, TraceRecord};
use cstlab::error::Error;
use cstlab::galois::{euler_product, DEFAULT_ENUM_CAP};
use cstlab::harness::{
    emit, error_term, lt_prediction, pi_a_count, CountQuery, ExperimentReport, ReportFormat,
};
use cstlab::verify::monte_carlo_summary;

use crate::config::RunConfig;

type Result<T> = std::result::Result<T, Error>;

fn open_out(out: Option<&Path>) -> Result<Box<dyn Write>> {
    match out {
        Some(p) => {
            let f = std::fs::File::create(p).map_err(|e| Error::Io {
                path: p.display().to_string(),
                source: e,
            })?;
            Ok(Box::new(std::io::BufWriter::new(f)))
        }
        None => Ok(Box::new(std::io::BufWriter::new(std::io::stdout()))),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io {
        path: "<output>".into(),
        source: e,
    }
}

/// `density`: CSV table of the three Φ routes over a uniform grid.
pub fn density(points: usize, out: Option<&Path>) -> Result<()> {
    if points < 2 {
        return Err(Error::InvalidInput("grid needs at least 2 points".into()));
    }
    let mut w = open_out(out)?;
    writeln!(
        w,
        "# reconciliation_constant = {}",
        reconciliation_constant()
    )
    .map_err(io_err)?;
    writeln!(w, "s,phi_closed,phi_quadrature,phi_convolution").map_err(io_err)?;
    for i in 0..points {
        let s = -1.0 + 2.0 * i as f64 / (points - 1) as f64;
        writeln!(
            w,
            "{},{},{},{}",
            s,
            phi_closed(s)?,
            phi_marginal_quadrature(s)?,
            phi_convolution_oracle(s)?
        )
        .map_err(io_err)?;
    }
    Ok(())
}

/// `ffactor`: JSON Euler-product report for each configured t (an object
/// for a single t, an array otherwise).
pub fn ffactor(cfg: &RunConfig, out: Option<&Path>) -> Result<()> {
    let mut results = Vec::new();
    for &t in &cfg.t_list {
        results.push(euler_product(t, cfg.m_a, cfg.cutoff, DEFAULT_ENUM_CAP)?);
    }
    let mut w = open_out(out)?;
    if results.len() == 1 {
        serde_json::to_writer_pretty(&mut w, &results[0])?;
    } else {
        serde_json::to_writer_pretty(&mut w, &results)?;
    }
    w.write_all(b"\n").map_err(io_err)?;
    Ok(())
}

/// `sweep`: computes the trace stream and writes the cache file.
pub fn sweep(cfg: &RunConfig, out: Option<&Path>) -> Result<()> {
    let pair = cfg.surface_pair();
    if let Some(warning) = pair.isogeny_warning(100) {
        eprintln!("warning: {warning}");
    }
    let records = trace_sweep(&pair, cfg.x_max, &cfg.sweep_config())?;
    let comments = vec![
        format!("curve1 = {:?}", cfg.curve1.coefficients()),
        format!("curve2 = {:?}", cfg.curve2.coefficients()),
        format!("x_max = {}", cfg.x_max),
        format!("seed = {}", cfg.seed),
        format!("crossover = {}", cfg.crossover),
    ];
    let path = out.map(Path::to_path_buf).unwrap_or(cfg.cache_path.clone());
    write_records_path(&path, &comments, &records)?;
    eprintln!("wrote {} records to {}", records.len(), path.display());
    Ok(())
}

fn load_cache(cfg: &RunConfig) -> Result<Vec<TraceRecord>> {
    let records = read_records_path(&cfg.cache_path)?;
    let max_p = records.last().map(|r| r.p).unwrap_or(0);
    // the cache covers x_max iff every good prime <= x_max is present,
    // i.e. no good prime lies in (max_p, x_max]
    let pair = cfg.surface_pair();
    let missing = cstlab::ec::sieve_primes(cfg.x_max)?
        .into_iter()
        .any(|p| p > max_p && !pair.is_bad(p));
    if missing {
        return Err(Error::InvalidInput(format!(
            "cache {} covers p <= {max_p}, but x_max = {}; run `sweep` first",
            cfg.cache_path.display(),
            cfg.x_max
        )));
    }
    Ok(records)
}

/// Decade checkpoints `100, 1000, ... <= x_max`, always ending at `x_max`.
fn checkpoints(x_max: u64) -> Vec<u64> {
    let mut xs = Vec::new();
    let mut x = 100u64;
    while x < x_max {
        xs.push(x);
        x = x.saturating_mul(10);
    }
    xs.push(x_max);
    xs
}

#[derive(Debug, serde::Serialize)]
struct LtRow {
    x: u64,
    t: i64,
    pi_a: u64,
    f_value: f64,
    f_tail_bound: f64,
    prediction: f64,
    ratio: f64,
}

/// `lt`: exact-trace counts against the conditional asymptotic, per decade.
pub fn lt(cfg: &RunConfig, out: Option<&Path>, format: ReportFormat) -> Result<()> {
    let records = load_cache(cfg)?;
    let mut rows = Vec::new();
    for &t in &cfg.t_list {
        let f = euler_product(t, cfg.m_a, cfg.cutoff, DEFAULT_ENUM_CAP)?;
        for &x in &checkpoints(cfg.x_max) {
            let pi_a = pi_a_count(&records, x as f64, t)?;
            let prediction = lt_prediction(x as f64, t, f.value)?;
            rows.push(LtRow {
                x,
                t,
                pi_a,
                f_value: f.value,
                f_tail_bound: f.tail_bound,
                prediction,
                ratio: pi_a as f64 / prediction,
            });
        }
    }
    let mut w = open_out(out)?;
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut w, &rows)?;
            w.write_all(b"\n").map_err(io_err)?;
        }
        ReportFormat::Csv => {
            writeln!(w, "x,t,pi_a,f_value,f_tail_bound,prediction,ratio").map_err(io_err)?;
            for r in rows {
                writeln!(
                    w,
                    "{},{},{},{},{},{},{}",
                    r.x, r.t, r.pi_a, r.f_value, r.f_tail_bound, r.prediction, r.ratio
                )
                .map_err(io_err)?;
            }
        }
    }
    Ok(())
}

/// `cst`: ExperimentReport batch over the (t, m, I) grid at each decade
/// checkpoint.
pub fn cst(cfg: &RunConfig, out: Option<&Path>, format: ReportFormat) -> Result<()> {
    let records = load_cache(cfg)?;
    let primes = cstlab::ec::sieve_primes(cfg.x_max)?;
    let mut reports: Vec<ExperimentReport> = Vec::new();
    for &t in &cfg.t_list {
        let f = euler_product(t, cfg.m_a, cfg.cutoff, DEFAULT_ENUM_CAP)?;
        for &m in &cfg.m_list {
            for interval in &cfg.intervals {
                for &x in &checkpoints(cfg.x_max) {
                    let q = CountQuery::new(x as f64, t, m, *interval)?;
                    let pi_x = primes.partition_point(|&p| p <= x) as u64;
                    reports.push(error_term(&records, &q, &f, pi_x, DEFAULT_ENUM_CAP)?);
                }
            }
        }
    }
    let w = open_out(out)?;
    emit(&reports, w, format)
}

/// `mc`: Monte-Carlo validation summary as JSON.
pub fn mc(cfg: &RunConfig, pairs: usize, out: Option<&Path>) -> Result<()> {
    if pairs == 0 {
        return Err(Error::InvalidInput("pairs must be >= 1".into()));
    }
    let summary = monte_carlo_summary(cfg.seed, pairs);
    let mut w = open_out(out)?;
    serde_json::to_writer_pretty(&mut w, &summary)?;
    w.write_all(b"\n").map_err(io_err)?;
    Ok(())
}

/// `verify`: the full invariant suite; returns false when any check fails.
pub fn verify(cfg: &RunConfig) -> Result<bool> {
    let results = cstlab::verify::run_all(cfg.seed);
    for r in &results {
        println!("{}", r.line());
    }
    Ok(cstlab::verify::all_passed(&results))
}
