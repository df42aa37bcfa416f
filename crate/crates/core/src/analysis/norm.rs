use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_ITER: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormEstimate {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Largest singular value by power iteration on `AᴴA` from a seeded
/// Gaussian start.
///
/// The Rayleigh quotient `‖Av‖²` increases monotonically. Iteration stops
/// once its relative change is below `tol` and the geometric tail
/// `Δ·ρ/(1−ρ)`, with `ρ` the ratio of successive changes, is below `tol`
/// as well; a slowly contracting sequence otherwise stops too early.
/// Empty matrices have norm 0.
pub fn operator_norm(a: &DMatrix<Complex64>, seed: u64, tol: f64, max_iter: usize) -> NormEstimate {
    if a.nrows() == 0 || a.ncols() == 0 {
        return NormEstimate { value: 0.0, iterations: 0, converged: true };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = DVector::from_fn(a.ncols(), |_, _| {
        Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
    });
    v.unscale_mut(v.norm());

    let mut best = 0.0f64;
    let mut prev: Option<f64> = None;
    let mut prev_delta: Option<f64> = None;
    for it in 1..=max_iter {
        let w = a * &v;
        let lam = w.norm_squared();
        best = best.max(lam);
        if lam == 0.0 {
            return NormEstimate { value: 0.0, iterations: it, converged: true };
        }
        if let Some(p) = prev {
            let delta = (lam - p).abs();
            let small = delta <= tol * lam;
            let tail_ok = match prev_delta {
                Some(pd) if pd > 0.0 => {
                    let rho = delta / pd;
                    rho < 1.0 && delta * rho / (1.0 - rho) <= tol * lam
                }
                _ => delta == 0.0,
            };
            if small && tail_ok {
                return NormEstimate { value: best.sqrt(), iterations: it, converged: true };
            }
            prev_delta = Some(delta);
        }
        prev = Some(lam);
        let z = a.ad_mul(&w);
        let nz = z.norm();
        if nz == 0.0 {
            return NormEstimate { value: best.sqrt(), iterations: it, converged: true };
        }
        v = z.unscale(nz);
    }
    NormEstimate { value: best.sqrt(), iterations: max_iter, converged: false }
}

/// Largest singular value from a dense SVD.
pub fn svd_norm(a: &DMatrix<Complex64>) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0.0;
    }
    a.clone().singular_values().max()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn zero_and_empty() {
        let z = DMatrix::<Complex64>::zeros(4, 3);
        assert_eq!(operator_norm(&z, 1, DEFAULT_TOL, DEFAULT_MAX_ITER).value, 0.0);
        let e = DMatrix::<Complex64>::zeros(4, 0);
        let est = operator_norm(&e, 1, DEFAULT_TOL, DEFAULT_MAX_ITER);
        assert!(est.converged && est.value == 0.0);
        assert_eq!(svd_norm(&e), 0.0);
    }

    #[test]
    fn embedded_diagonal() {
        let mut a = DMatrix::<Complex64>::zeros(5, 4);
        a[(1, 2)] = c(3.0);
        a[(3, 0)] = c(1.0);
        let est = operator_norm(&a, 7, DEFAULT_TOL, DEFAULT_MAX_ITER);
        assert!(est.converged);
        assert!((est.value - 3.0).abs() < 1e-8);
    }

    #[test]
    fn flags_non_convergence() {
        let a = DMatrix::from_fn(6, 6, |i, j| c(1.0 / (1.0 + i as f64 + j as f64)) + Complex64::new(0.0, (i * j) as f64 * 0.01));
        let est = operator_norm(&a, 3, 1e-300, 5);
        assert!(!est.converged);
        assert_eq!(est.iterations, 5);
        assert!(est.value <= svd_norm(&a) * (1.0 + 1e-12));
    }

    #[test]
    fn deterministic() {
        let a = DMatrix::from_fn(20, 9, |i, j| Complex64::new((i as f64).sin(), (j as f64 * 1.3).cos()));
        assert_eq!(operator_norm(&a, 11, 1e-10, 500), operator_norm(&a, 11, 1e-10, 500));
    }
}
