//! Kolmogorov-Smirnov distance between empirical normalized traces and the
//! model law `Φ`.

use crate::density::PhiCdf;
use crate::ec::TraceRecord;
use crate::error::Error;
use crate::Result;

/// Sup-norm distance between the empirical CDF of
/// `{a1p/(4 sqrt p) : p <= x}` and the CDF of `Φ`.
pub fn ks_distance(records: &[TraceRecord], x: f64) -> Result<f64> {
    let values: Vec<f64> = records
        .iter()
        .take_while(|r| (r.p as f64) <= x)
        .map(|r| r.normalized())
        .collect();
    ks_distance_values(&values)
}

/// KS statistic of raw sample values in [-1, 1] against `Φ`.
pub fn ks_distance_values(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySample("KS distance needs at least one value".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let cdf = PhiCdf::global();
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &v) in sorted.iter().enumerate() {
        let f = cdf.cdf(v);
        d = d.max(((i + 1) as f64 / n - f).abs());
        d = d.max((f - i as f64 / n).abs());
    }
    Ok(d)
}
