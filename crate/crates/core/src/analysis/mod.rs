//! Truncation-error bound, discretized operators, norm estimation and the
//! error-versus-degree sweep.

mod bound;
mod matrix;
mod norm;
mod sweep;

pub use bound::{error_bound, ErrorBound};
pub use matrix::{assemble_direct_matrix, assemble_truncated_matrix, OperatorMatrix};
pub use norm::{operator_norm, svd_norm, NormEstimate, DEFAULT_MAX_ITER, DEFAULT_TOL};
pub use sweep::{error_sweep, ErrorSweep, SweepRecord, SweepScenario, NOISE_FLOOR, SWEEP_CSV_HEADER};
