//! The analytic side: joint trace density, the marginal `Φ` by three
//! routes, quadrature utilities, and seeded semicircle sampling.

pub mod elliptic;
pub mod phi;
pub mod quad;
pub mod sample;
pub mod support;

pub use elliptic::{ellip_e, ellip_k};
pub use phi::{
    integrate_phi, phi_closed, phi_convolution_oracle, phi_marginal_quadrature, phi_prime,
    reconciliation_constant, IntervalSpec, PhiCdf, PHI_AT_ZERO, S_MIN,
};
pub use quad::integrate;
pub use sample::{derive_stream_seed, pair_sums_normalized, semicircle_sample};
pub use support::{in_support, rho_joint, JointPoint, SINGULARITY_TOL};
