//! Congruence-and-interval counts over trace record streams.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::FromPrimitive;

use crate::density::IntervalSpec;
use crate::ec::TraceRecord;
use crate::error::Error;
use crate::Result;

/// Arguments of one equidistribution cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountQuery {
    pub x: f64,
    pub t: i64,
    pub m: u64,
    pub interval: IntervalSpec,
}

impl CountQuery {
    pub fn new(x: f64, t: i64, m: u64, interval: IntervalSpec) -> Result<Self> {
        if x.is_nan() || x < 2.0 {
            return Err(Error::InvalidInput(format!("x must be >= 2, got {x}")));
        }
        if m == 0 {
            return Err(Error::InvalidInput("m must be >= 1".into()));
        }
        Ok(Self { x, t, m, interval })
    }
}

fn ensure_sorted(records: &[TraceRecord]) -> Result<()> {
    if records.windows(2).any(|w| w[0].p >= w[1].p) {
        return Err(Error::InvalidInput(
            "record stream must be strictly ascending in p".into(),
        ));
    }
    Ok(())
}

/// Exact membership test `a1p / (4 sqrt p) ∈ [lo, hi]` in integer/rational
/// arithmetic. The f64 endpoints are dyadic rationals, so squaring both
/// sides is exact and no boundary is misclassified.
struct IntervalTester {
    /// `16 lo²` as an exact rational (None when lo = -1, where the Hasse
    /// bound makes the lower test vacuous).
    lo_sq16: Option<BigRational>,
    hi_sq16: Option<BigRational>,
}

impl IntervalTester {
    fn new(interval: &IntervalSpec) -> Self {
        let conv = |v: f64| {
            let r = BigRational::from_f64(v).expect("interval endpoint is finite");
            Some(BigRational::from_integer(BigInt::from(16)) * &r * &r)
        };
        Self {
            lo_sq16: if interval.lo() <= -1.0 {
                None
            } else {
                conv(interval.lo())
            },
            hi_sq16: if interval.hi() >= 1.0 {
                None
            } else {
                conv(interval.hi())
            },
        }
    }

    fn contains(&self, rec: &TraceRecord) -> bool {
        let a = rec.a1p;
        let p = rec.p;
        // lower bound 4 lo sqrt(p) <= a1p: vacuous for a1p >= 0 since lo <= 0
        if a < 0 {
            if let Some(lo16) = &self.lo_sq16 {
                let lhs = BigRational::from_integer(BigInt::from(a) * BigInt::from(a));
                let rhs = lo16 * BigRational::from_integer(BigInt::from(p));
                if lhs > rhs {
                    return false;
                }
            }
        }
        // upper bound a1p <= 4 hi sqrt(p): vacuous for a1p <= 0 since hi >= 0
        if a > 0 {
            if let Some(hi16) = &self.hi_sq16 {
                let lhs = BigRational::from_integer(BigInt::from(a) * BigInt::from(a));
                let rhs = hi16 * BigRational::from_integer(BigInt::from(p));
                if lhs > rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// `#{p <= x : a1p ≡ t (mod m), a1p/(4 sqrt p) ∈ I}`.
pub fn count_joint(records: &[TraceRecord], q: &CountQuery) -> Result<u64> {
    ensure_sorted(records)?;
    let tester = IntervalTester::new(&q.interval);
    let t_mod = q.t.rem_euclid(q.m as i64);
    let mut n = 0u64;
    for rec in records {
        if (rec.p as f64) > q.x {
            break;
        }
        if rec.a1p.rem_euclid(q.m as i64) != t_mod {
            continue;
        }
        if tester.contains(rec) {
            n += 1;
        }
    }
    Ok(n)
}

/// `π_A(x, t) = #{p <= x : a1p = t}` over the good primes in the stream.
pub fn pi_a_count(records: &[TraceRecord], x: f64, t: i64) -> Result<u64> {
    ensure_sorted(records)?;
    Ok(records
        .iter()
        .take_while(|r| (r.p as f64) <= x)
        .filter(|r| r.a1p == t)
        .count() as u64)
}

/// The exact-match window `I = (-(m-|t|)/(4 sqrt x), (m-|t|)/(4 sqrt x))`:
/// inside it, for `p > x t²/(m-|t|)²`, the joint condition
/// `a1p ≡ t (mod m)` and `a1p/(4 sqrt p) ∈ I` forces `a1p = t`.
pub fn exact_match_window(x: f64, t: i64, m: u64) -> Result<IntervalSpec> {
    if x < 2.0 {
        return Err(Error::InvalidInput("x must be >= 2".into()));
    }
    let margin = m as f64 - t.unsigned_abs() as f64;
    if margin <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "exact-match window needs m > |t| (m = {m}, t = {t})"
        )));
    }
    let half = margin / (4.0 * x.sqrt());
    if half > 1.0 {
        return Err(Error::InvalidInput(format!(
            "window half-width {half} exceeds 1; increase x or decrease m"
        )));
    }
    IntervalSpec::new(-half, half)
}
