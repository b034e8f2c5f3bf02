//! The empirical engine: counts over trace streams, predictions, error
//! terms, regime checks, KS distances, and report emission.

pub mod count;
pub mod ks;
pub mod predict;
pub mod report;

pub use count::{count_joint, pi_a_count, exact_match_window, CountQuery};
pub use ks::{ks_distance, ks_distance_values};
pub use predict::{
    cst_prediction, error_term, lt_prediction, regime_check, ExperimentReport, FValue,
    QueryFields, RegimeFlags, DEFAULT_C1, DEFAULT_C2,
};
pub use report::{emit, parse_csv, parse_json, ReportFormat, CSV_HEADER};
