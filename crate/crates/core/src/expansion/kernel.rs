use num_complex::Complex64;

use crate::specfun::{legendre_polynomials, spherical_bessel_j, Direction};
use crate::vec3::{dot, norm, RVec3};

/// Partial sum `S_L = Σ_{l=0}^{L} j^l (2l+1) j_l(k‖r′‖) P_l(cos γ)` of the
/// plane-wave expansion of `e^{jk r̂·r′}`, where `γ` is the angle between
/// `dir` and `r′`.
pub fn jacobi_anger_kernel(dir: Direction, r_prime: &RVec3, k: f64, l_terms: usize) -> Complex64 {
    let r = norm(r_prime);
    if r == 0.0 || k == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let cos_gamma = (dot(&dir.unit_vector(), r_prime) / r).clamp(-1.0, 1.0);
    let p = legendre_polynomials(l_terms, cos_gamma);
    let jl = spherical_bessel_j(l_terms, k * r).expect("non-negative argument");
    let mut sum = Complex64::new(0.0, 0.0);
    let mut phase = Complex64::new(1.0, 0.0);
    for l in 0..=l_terms {
        sum += phase * ((2 * l + 1) as f64 * jl[l] * p[l]);
        phase *= Complex64::new(0.0, 1.0);
    }
    sum
}
