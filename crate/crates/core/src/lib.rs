//! Far-field radiation operator of a bounded current distribution and its
//! finite-rank vector-spherical-harmonic truncation.
//!
//! The crate is organized bottom-up:
//!
//! * [`context`]: analysis frequency, free-space constants, enclosing radius.
//! * [`specfun`]: Legendre functions, scalar/vector spherical harmonics,
//!   spherical Bessel functions and the Bessel majorant used by the bound.
//! * [`discretization`]: product quadrature on the sphere, sampled fields and
//!   point-source current ensembles.
//! * [`radiation`]: the exact far-field (angular spectrum) operator.
//! * [`expansion`]: multipole coefficients, the truncated operator, the
//!   plane-wave partial sums and the VSH projection.
//! * [`analysis`]: the closed-form error bound, operator matrices, norm
//!   estimation and the error-vs-degree sweep.
//! * [`cli`]: scenario files and the command implementations behind the
//!   `farfield` binary.

pub mod analysis;
pub mod cli;
pub mod context;
pub mod discretization;
mod error;
pub mod expansion;
pub mod radiation;
pub mod specfun;
pub mod vec3;

pub use error::{Error, Result};

pub use num_complex::Complex64;
