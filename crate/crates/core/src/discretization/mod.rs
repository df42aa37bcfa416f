//! Quadrature on the unit sphere, sampled vector fields and point-source
//! current ensembles.

mod ensemble;
mod field;
mod quadrature;

pub use ensemble::{dipole_at_origin, random_current_ensemble, CurrentEnsemble, PointSource};
pub use field::{SampledField, CSV_HEADER as FIELD_CSV_HEADER};
pub use quadrature::{gauss_legendre, sphere_grid, SphereQuadrature};
