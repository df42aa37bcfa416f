//! Finite-rank spherical-harmonic approximations of the radiation operator.

mod coefficients;
mod kernel;
mod projection;

pub use coefficients::{
    multipole_coefficients, truncated_far_field, truncated_far_field_at, truncation_prefactor,
    MultipoleCoefficients,
};
pub(crate) use coefficients::source_projection;
pub use kernel::jacobi_anger_kernel;
pub use projection::{project_onto_vl, vsh_analysis, vsh_synthesis, VshCoefficients};
