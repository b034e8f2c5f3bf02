//! Equidistribution predictions, the error term, regime checks, and the
//! Lang-Trotter asymptotic.

use num_traits::ToPrimitive;

use super::count::{count_joint, CountQuery};
use crate::density::{integrate_phi, IntervalSpec, PHI_AT_ZERO};
use crate::ec::TraceRecord;
use crate::error::Error;
use crate::galois::{class_fraction, EulerProductResult};
use crate::Result;

/// Outcome of the uniformity-window test of the conjectured error regime:
/// `δ(I) < 1/sqrt(log m)` and `C1 (log x)² < m <= C2 δ(I) sqrt(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RegimeFlags {
    pub delta_window: bool,
    pub m_lower: bool,
    pub m_upper: bool,
}

impl RegimeFlags {
    pub fn all(&self) -> bool {
        self.delta_window && self.m_lower && self.m_upper
    }
}

/// Evaluates the three regime inequalities. `m = 1` makes the δ-window
/// vacuous (log 1 = 0); the returned note records that convention.
pub fn regime_check(
    x: f64,
    _t: i64,
    m: u64,
    interval: &IntervalSpec,
    c1: f64,
    c2: f64,
) -> (RegimeFlags, Option<String>) {
    let delta = interval.delta();
    let (delta_window, note) = if m == 1 {
        (
            true,
            Some("m = 1: delta-window vacuously true by convention (log m = 0)".to_string()),
        )
    } else {
        (delta < 1.0 / (m as f64).ln().sqrt(), None)
    };
    let logx = x.ln();
    let flags = RegimeFlags {
        delta_window,
        m_lower: c1 * logx * logx < m as f64,
        m_upper: m as f64 <= c2 * delta * x.sqrt(),
    };
    (flags, note)
}

/// The Chebotarev-Sato-Tate prediction
/// `(#C(m,t)/#G(m)) ∫_I Φ(s) ds` for one cell.
pub fn cst_prediction(m: u64, t: i64, interval: &IntervalSpec, cap: u64) -> Result<f64> {
    let frac = class_fraction(m, t, cap)?
        .to_f64()
        .ok_or_else(|| Error::Domain("class fraction does not fit f64".into()))?;
    Ok(frac * integrate_phi(interval)?)
}

/// The conditional Lang-Trotter main term
/// `(Φ(0)/2) F(t) sqrt(x) / log x`.
pub fn lt_prediction(x: f64, t: i64, f_value: f64) -> Result<f64> {
    if t == 0 {
        return Err(Error::Domain("t = 0 is outside the prediction's domain".into()));
    }
    if x.is_nan() || x <= 1.0 {
        return Err(Error::Domain(format!("x must exceed 1, got {x}")));
    }
    Ok(PHI_AT_ZERO / 2.0 * f_value * x.sqrt() / x.ln())
}

/// Everything measured for one `(x, t, m, I)` cell.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct ExperimentReport {
    pub query: QueryFields,
    pub raw_count: u64,
    pub pi_x: u64,
    pub empirical_ratio: f64,
    pub prediction: f64,
    pub error_value: f64,
    pub main_term_eq5: f64,
    pub regime: RegimeFlags,
    #[serde(rename = "F")]
    pub f: FValue,
    pub notes: String,
}

/// Flattened query echo in reports.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct QueryFields {
    pub x: f64,
    pub t: i64,
    pub m: u64,
    pub interval: [f64; 2],
}

#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct FValue {
    pub value: f64,
    pub tail_bound: f64,
}

/// Default regime constants; the model leaves them unspecified.
pub const DEFAULT_C1: f64 = 1.0;
pub const DEFAULT_C2: f64 = 1.0;

/// Assembles the error report for one cell.
///
/// `pi_x` must be the plain prime count `π(x)` over the same prime universe
/// the sweep drew from (bad primes included in the denominator; they are
/// absorbed into the error).
pub fn error_term(
    records: &[TraceRecord],
    q: &CountQuery,
    f_result: &EulerProductResult,
    pi_x: u64,
    cap: u64,
) -> Result<ExperimentReport> {
    if pi_x == 0 {
        return Err(Error::InvalidInput("pi(x) must be positive".into()));
    }
    let raw_count = count_joint(records, q)?;
    let empirical_ratio = raw_count as f64 / pi_x as f64;
    let prediction = cst_prediction(q.m, q.t, &q.interval, cap)?;
    let error_value = empirical_ratio - prediction;
    let main_term_eq5 = PHI_AT_ZERO * f_result.value * q.interval.delta() / q.m as f64;
    let (regime, note) = regime_check(q.x, q.t, q.m, &q.interval, DEFAULT_C1, DEFAULT_C2);
    Ok(ExperimentReport {
        query: QueryFields {
            x: q.x,
            t: q.t,
            m: q.m,
            interval: [q.interval.lo(), q.interval.hi()],
        },
        raw_count,
        pi_x,
        empirical_ratio,
        prediction,
        error_value,
        main_term_eq5,
        regime,
        f: FValue {
            value: f_result.value,
            tail_bound: f_result.tail_bound,
        },
        notes: note.unwrap_or_default(),
    })
}
