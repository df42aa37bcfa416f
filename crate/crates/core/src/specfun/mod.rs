//! Special functions: associated Legendre functions, scalar and vector
//! spherical harmonics, spherical Bessel functions of the first kind and
//! the Bessel majorant `f(x)`.

mod bessel;
mod bound;
mod direction;
mod harmonics;
mod legendre;

pub use bessel::spherical_bessel_j;
pub use bound::bound_fn;
pub use direction::{Direction, TangentVector};
pub use harmonics::{scalar_sh, sh_count, sh_index, vsh_eval, ShTable, Vsh};
pub use legendre::{assoc_legendre, legendre_polynomials, NormalizedLegendre};
