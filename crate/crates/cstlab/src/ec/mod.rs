//! Elliptic-curve arithmetic over prime fields: curve models, prime
//! generation, trace-of-Frobenius computation, bulk sweeps, and the trace
//! cache format.

pub mod cache;
pub mod count;
pub mod curve;
pub mod curve_fp;
pub mod modarith;
pub mod sieve;
pub mod sweep;

pub use cache::{read_records, read_records_path, write_records, write_records_path};
pub use count::{ap, ap_bsgs, ap_naive, DEFAULT_CROSSOVER};
pub use curve::{discriminant, EllipticCurveQ, SurfacePair, TraceRecord};
pub use sieve::{prime_count, sieve_primes, sieve_primes_budget};
pub use sweep::{trace_sweep, SweepConfig};
