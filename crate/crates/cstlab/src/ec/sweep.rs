//! Bulk trace computation over all good primes up to a bound.

use rayon::prelude::*;

use super::count::{ap, DEFAULT_CROSSOVER};
use super::curve::{SurfacePair, TraceRecord};
use super::sieve::sieve_primes;
use crate::Result;

/// Tuning for a sweep. `seed` drives BSGS point selection; `threads = 0`
/// means "use the global rayon pool as-is".
#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub crossover: u64,
    pub seed: u64,
    pub threads: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            crossover: DEFAULT_CROSSOVER,
            seed: 0,
            threads: 0,
        }
    }
}

/// One `TraceRecord` per good prime `p <= x`, ascending.
///
/// Per-prime work is pure and seeded per (curve, p), so the output is a
/// deterministic function of `(pair, x, config.seed)` regardless of the
/// thread count.
pub fn trace_sweep(pair: &SurfacePair, x: u64, cfg: &SweepConfig) -> Result<Vec<TraceRecord>> {
    let primes = sieve_primes(x)?;
    let good: Vec<u64> = primes
        .into_iter()
        .filter(|&p| !pair.is_bad(p))
        .collect();

    let run = || -> Result<Vec<TraceRecord>> {
        good.par_iter()
            .map(|&p| -> Result<TraceRecord> {
                let ap1 = ap(&pair.e1, p, cfg.crossover, cfg.seed)?;
                let ap2 = ap(&pair.e2, p, cfg.crossover, cfg.seed)?;
                TraceRecord::new(p, ap1, ap2, ap1 + ap2)
            })
            .collect()
    };

    if cfg.threads == 0 {
        run()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| crate::error::Error::Resource(format!("thread pool: {e}")))?;
        pool.install(run)
    }
}
