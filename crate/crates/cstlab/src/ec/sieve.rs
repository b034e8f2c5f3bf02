//! Segmented sieve of Eratosthenes.

use crate::error::Error;
use crate::Result;

/// Upper bound on the sieve argument before a resource error is returned.
/// At this size the base sieve plus the prime list stay comfortably in RAM.
pub const DEFAULT_SIEVE_BUDGET: u64 = 4_000_000_000;

/// All primes `<= x`, ascending. Returns an empty list for `x < 2`.
pub fn sieve_primes(x: u64) -> Result<Vec<u64>> {
    sieve_primes_budget(x, DEFAULT_SIEVE_BUDGET)
}

/// As [`sieve_primes`] with an explicit budget on `x`.
pub fn sieve_primes_budget(x: u64, budget: u64) -> Result<Vec<u64>> {
    if x > budget {
        return Err(Error::Resource(format!(
            "sieve bound {x} exceeds configured budget {budget}"
        )));
    }
    if x < 2 {
        return Ok(Vec::new());
    }
    let n = x as usize;
    // Base sieve of odds up to sqrt(x).
    let root = (x as f64).sqrt() as usize + 1;
    let mut base = vec![true; root + 1];
    let mut base_primes: Vec<usize> = Vec::new();
    for i in (3..=root).step_by(2) {
        if base[i] {
            base_primes.push(i);
            let mut j = i * i;
            while j <= root {
                base[j] = false;
                j += 2 * i;
            }
        }
    }

    let approx = if n > 16 {
        (n as f64 / (n as f64).ln() * 1.15) as usize
    } else {
        8
    };
    let mut primes = Vec::with_capacity(approx);
    primes.push(2u64);

    // Segment over odd numbers in blocks.
    const SEGMENT: usize = 1 << 18;
    let mut mark = vec![false; SEGMENT];
    let mut low = 3usize;
    while low <= n {
        let high = (low + 2 * SEGMENT - 2).min(n | 1); // odd-valued upper end
        let len = (high - low) / 2 + 1;
        mark[..len].fill(false);
        for &p in &base_primes {
            if p * p > high {
                break;
            }
            // first odd multiple of p in [low, high] that is >= p*p
            let mut start = p * p;
            if start < low {
                start = low.div_ceil(p) * p;
                if start.is_multiple_of(2) {
                    start += p;
                }
            }
            let mut j = start;
            while j <= high {
                mark[(j - low) / 2] = true;
                j += 2 * p;
            }
        }
        for (i, &m) in mark[..len].iter().enumerate() {
            if !m {
                let v = low + 2 * i;
                if v <= n {
                    primes.push(v as u64);
                }
            }
        }
        low = high + 2;
    }
    Ok(primes)
}

/// `pi(x)` for the same universe as [`sieve_primes`].
pub fn prime_count(x: u64) -> Result<u64> {
    Ok(sieve_primes(x)?.len() as u64)
}
