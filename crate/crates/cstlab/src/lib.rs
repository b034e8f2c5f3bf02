//! Computational laboratory for the arithmetic statistics of Frobenius traces
//! on abelian surfaces that split as a product of two elliptic curves.
//!
//! The crate has four legs:
//!
//! * [`ec`] — elliptic-curve arithmetic over prime fields: prime sieving,
//!   trace-of-Frobenius computation by exhaustive point counting and by
//!   baby-step/giant-step order finding, bulk trace sweeps, and a CSV trace
//!   cache.
//! * [`density`] — the analytic side: the joint trace density on its support
//!   region, the marginal density `Φ` of the normalized surface trace in
//!   closed form (complete elliptic integrals), by direct quadrature, and by
//!   an independent semicircle-convolution oracle, plus seeded Monte-Carlo
//!   sampling.
//! * [`galois`] — the group-theoretic side: trace/determinant counts over
//!   `GL2(Z/m)`, class fractions in the determinant-matched product group,
//!   exact local factors of the Lang-Trotter constant, and the Euler product
//!   `F(t)` with a quantified truncation bound.
//! * [`harness`] — the empirical engine: congruence-and-interval counts over
//!   trace records, equidistribution predictions and error terms, regime
//!   checks, Lang-Trotter comparisons, Kolmogorov-Smirnov distances, and
//!   report serialization.
//!
//! [`verify`] bundles the cross-formula consistency checks (closed form vs
//! enumeration, density route agreement, Monte-Carlo validation) into a
//! machine-checkable suite used by the CLI `verify` subcommand.

pub mod density;
pub mod ec;
pub mod error;
pub mod galois;
pub mod harness;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
