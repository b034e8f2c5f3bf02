//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Variants are grouped by the exit-code class the CLI maps them to:
/// validation/domain errors, resource limits, and numerical-accuracy
/// failures.
#[derive(Debug, Error)]
pub enum Error {
    /// A Weierstrass model with vanishing discriminant.
    #[error("singular curve: discriminant is zero")]
    SingularCurve,

    /// Reduction at a prime dividing the discriminant.
    #[error("bad reduction at p = {p}")]
    BadReduction { p: u64 },

    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input stream violated an ordering or consistency contract.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A line of a trace-cache file failed validation.
    #[error("cache parse error at line {line}: {msg}")]
    CacheParse { line: usize, msg: String },

    /// Work refused because it exceeds a configured budget.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Quadrature or iteration failed to reach the requested tolerance.
    #[error("accuracy failure: requested {requested:e}, achieved {achieved:e}")]
    Accuracy { requested: f64, achieved: f64 },

    /// Group-order search could not pin down a unique order.
    #[error("order ambiguity at p = {p} after {attempts} attempts")]
    Ambiguous { p: u64, attempts: u32 },

    /// Statistic requested on an empty sample.
    #[error("empty sample: {0}")]
    EmptySample(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable discriminator used in CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SingularCurve => "singular_curve",
            Error::BadReduction { .. } => "bad_reduction",
            Error::Domain(_) => "domain",
            Error::InvalidInput(_) => "invalid_input",
            Error::CacheParse { .. } => "cache_parse",
            Error::Resource(_) => "resource",
            Error::Accuracy { .. } => "accuracy",
            Error::Ambiguous { .. } => "ambiguous_order",
            Error::EmptySample(_) => "empty_sample",
            Error::Io { .. } => "io",
            Error::Json(_) => "json",
        }
    }
}
