//! The group-theoretic side: trace/determinant counts over `GL2(Z/m)`,
//! class fractions of the determinant-matched product group, exact local
//! factors, and the Euler product `F(t)`.

pub mod euler;
pub mod factors;
pub mod table;

pub use euler::{
    entanglement_level, euler_product, euler_product_with_head, f_convergence_sequence,
    tail_constant, EulerProductResult, FactorTerm,
};
pub use factors::{
    class_fraction, class_fractions_all, local_factor_bruteforce, local_factor_prime_power,
    local_factor_universal, valuation, LocalFactorValue, Provenance,
};
pub use table::{gl2_order, prime_power_factors, TraceDetTable, COMPOSITE_CAP, DEFAULT_ENUM_CAP};
