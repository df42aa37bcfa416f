//! Scalar and vector spherical harmonics.
//!
//! `Y_l^m(θ, φ) = √((2l+1)/(4π) · (l−m)!/(l+m)!) · P_l^m(cos θ) · e^{jmφ}`,
//! orthonormal on the unit sphere, with `Y_l^{−m} = (−1)^m conj(Y_l^m)`.
//!
//! The vector harmonics are `Y_l^m r̂`, `Ψ_l^m = r∇Y_l^m` and
//! `Φ_l^m = r̂ × Ψ_l^m`; the two tangential families have squared norm
//! `l(l+1)` and vanish for `l = 0`.

use num_complex::Complex64;

use super::direction::{Direction, TangentVector};
use super::legendre::NormalizedLegendre;
use crate::vec3::{cscale, complexify, CVec3};
use crate::{Error, Result};

/// Flat index of `(l, m)` in degree-major order, `m` ascending from `−l`.
#[inline]
pub fn sh_index(l: usize, m: i64) -> usize {
    ((l * l + l) as i64 + m) as usize
}

/// Number of `(l, m)` pairs with `l < degree_count`.
#[inline]
pub fn sh_count(degree_count: usize) -> usize {
    degree_count * degree_count
}

fn check_order(l: usize, m: i64) -> Result<()> {
    if m.unsigned_abs() as usize > l {
        return Err(Error::domain(format!("order {m} exceeds degree {l}")));
    }
    Ok(())
}

/// All spherical harmonics `Y_l^m` with `l ≤ l_max` at one direction, and
/// optionally the angular derivatives needed for `Ψ` and `Φ`.
#[derive(Debug, Clone)]
pub struct ShTable {
    l_max: usize,
    dir: Direction,
    y: Vec<Complex64>,
    // ∂θ Y and (1/sinθ) ∂φ Y
    grad: Option<(Vec<Complex64>, Vec<Complex64>)>,
}

impl ShTable {
    pub fn new(l_max: usize, dir: Direction) -> Self {
        Self::build(l_max, dir, false)
    }

    pub fn with_gradients(l_max: usize, dir: Direction) -> Self {
        Self::build(l_max, dir, true)
    }

    fn build(l_max: usize, dir: Direction, gradients: bool) -> Self {
        let leg = NormalizedLegendre::new(l_max, dir.theta());
        let n = sh_count(l_max + 1);
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        let mut grad = gradients.then(|| {
            (
                vec![Complex64::new(0.0, 0.0); n],
                vec![Complex64::new(0.0, 0.0); n],
            )
        });

        for m in 0..=l_max {
            let phase = Complex64::from_polar(1.0, m as f64 * dir.phi());
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            for l in m..=l_max {
                let yp = phase * leg.value(l, m);
                y[sh_index(l, m as i64)] = yp;
                if m > 0 {
                    y[sh_index(l, -(m as i64))] = yp.conj() * sign;
                }
                if let Some((dth, dph)) = grad.as_mut() {
                    let t = phase * leg.dtheta(l, m);
                    let p = phase * Complex64::new(0.0, m as f64 * leg.over_sin(l, m));
                    dth[sh_index(l, m as i64)] = t;
                    dph[sh_index(l, m as i64)] = p;
                    if m > 0 {
                        dth[sh_index(l, -(m as i64))] = t.conj() * sign;
                        dph[sh_index(l, -(m as i64))] = p.conj() * sign;
                    }
                }
            }
        }
        Self { l_max, dir, y, grad }
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    pub fn direction(&self) -> Direction {
        self.dir
    }

    /// `Y_l^m`; panics if `l > l_max`.
    #[inline]
    pub fn y(&self, l: usize, m: i64) -> Complex64 {
        self.y[sh_index(l, m)]
    }

    /// All values in [`sh_index`] order.
    pub fn values(&self) -> &[Complex64] {
        &self.y
    }

    fn grads(&self) -> &(Vec<Complex64>, Vec<Complex64>) {
        self.grad
            .as_ref()
            .expect("ShTable was built without gradients")
    }

    /// `Ψ_l^m = θ̂ ∂θY + φ̂ (1/sinθ) ∂φY`.
    #[inline]
    pub fn psi(&self, l: usize, m: i64) -> TangentVector {
        let (dth, dph) = self.grads();
        let i = sh_index(l, m);
        TangentVector {
            dir: self.dir,
            v_theta: dth[i],
            v_phi: dph[i],
        }
    }

    /// `Φ_l^m = r̂ × Ψ_l^m`.
    #[inline]
    pub fn phi(&self, l: usize, m: i64) -> TangentVector {
        self.psi(l, m).rotate_quarter()
    }
}

/// `Y_l^m(dir)`.
pub fn scalar_sh(l: usize, m: i64, dir: Direction) -> Result<Complex64> {
    check_order(l, m)?;
    Ok(ShTable::new(l, dir).y(l, m))
}

/// The three vector spherical harmonics of degree `l` and order `m`.
#[derive(Debug, Clone, Copy)]
pub struct Vsh {
    /// `Y_l^m r̂`
    pub y_vec: CVec3,
    pub psi: TangentVector,
    pub phi: TangentVector,
}

pub fn vsh_eval(l: usize, m: i64, dir: Direction) -> Result<Vsh> {
    check_order(l, m)?;
    let table = ShTable::with_gradients(l, dir);
    Ok(Vsh {
        y_vec: cscale(&complexify(&dir.unit_vector()), table.y(l, m)),
        psi: table.psi(l, m),
        phi: table.phi(l, m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::legendre::{assoc_legendre, legendre_polynomials};
    use crate::vec3::{dot, rdot};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_dir(rng: &mut ChaCha8Rng) -> Direction {
        let z: f64 = rng.random_range(-1.0..1.0);
        Direction::new(z.acos(), rng.random_range(0.0..2.0 * PI)).unwrap()
    }

    #[test]
    fn constant_harmonic() {
        let d = Direction::new(0.4, 1.2).unwrap();
        let y = scalar_sh(0, 0, d).unwrap();
        assert!((y.re - 0.282_094_791_773_878_14).abs() < 1e-15);
        assert_eq!(y.im, 0.0);
    }

    #[test]
    fn dipole_harmonic_at_pole() {
        let d = Direction::new(0.0, 0.0).unwrap();
        let y = scalar_sh(1, 0, d).unwrap();
        assert!((y.re - 0.488_602_511_902_919_9).abs() < 1e-15);
    }

    #[test]
    fn matches_definition_via_unnormalized_legendre() {
        let d = Direction::new(0.9, 2.2).unwrap();
        for l in 0..=10usize {
            for m in -(l as i64)..=(l as i64) {
                let (lf, mf) = (l as f64, m as f64);
                let mut ratio = 1.0;
                // (l−m)!/(l+m)!
                if m >= 0 {
                    for t in (l - m as usize + 1)..=(l + m as usize) {
                        ratio /= t as f64;
                    }
                } else {
                    for t in (l - m.unsigned_abs() as usize + 1)..=(l + m.unsigned_abs() as usize) {
                        ratio *= t as f64;
                    }
                }
                let pre = ((2.0 * lf + 1.0) / (4.0 * PI) * ratio).sqrt();
                let expected = Complex64::from_polar(pre * assoc_legendre(l, m, d.theta().cos()).unwrap(), mf * d.phi());
                let got = scalar_sh(l, m, d).unwrap();
                assert!((got - expected).norm() < 1e-13, "l={l} m={m}");
            }
        }
    }

    #[test]
    fn unsold_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let d = random_dir(&mut rng);
            let t = ShTable::new(30, d);
            for l in 0..=30usize {
                let s: f64 = (-(l as i64)..=l as i64).map(|m| t.y(l, m).norm_sqr()).sum();
                assert!((s - (2 * l + 1) as f64 / (4.0 * PI)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn addition_theorem() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a = random_dir(&mut rng);
            let b = random_dir(&mut rng);
            let ta = ShTable::new(25, a);
            let tb = ShTable::new(25, b);
            let p = legendre_polynomials(25, dot(&a.unit_vector(), &b.unit_vector()));
            for l in 0..=25usize {
                let s: Complex64 = (-(l as i64)..=l as i64).map(|m| ta.y(l, m) * tb.y(l, m).conj()).sum();
                let lhs = 4.0 * PI / (2 * l + 1) as f64 * s;
                assert!((lhs - p[l]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn conjugation_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..30 {
            let t = ShTable::new(25, random_dir(&mut rng));
            for l in 0..=25usize {
                for m in 1..=l as i64 {
                    let s = if m % 2 == 0 { 1.0 } else { -1.0 };
                    assert!((t.y(l, -m) - t.y(l, m).conj() * s).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn vsh_of_degree_zero() {
        let d = Direction::new(1.3, 0.5).unwrap();
        let v = vsh_eval(0, 0, d).unwrap();
        assert_eq!(v.psi.norm_sqr(), 0.0);
        assert_eq!(v.phi.norm_sqr(), 0.0);
        let r = d.unit_vector();
        for i in 0..3 {
            assert!((v.y_vec[i].re - r[i] / (4.0 * PI).sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn vsh_tangent_fields_are_transverse_and_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let d = random_dir(&mut rng);
            let r = d.unit_vector();
            for l in 1..6usize {
                for m in -(l as i64)..=l as i64 {
                    let v = vsh_eval(l, m, d).unwrap();
                    assert!(rdot(&r, &v.psi.to_cartesian()).norm() < 1e-15);
                    assert!(rdot(&r, &v.phi.to_cartesian()).norm() < 1e-15);
                    // pointwise Ψ·Φ* + … is not zero in general, but Ψ ⟂ Φ as real
                    // frames: Φ is Ψ rotated by 90° in the tangent plane
                    let psi = v.psi;
                    let phi = v.phi;
                    assert!((phi.v_theta + psi.v_phi).norm() < 1e-15);
                    assert!((phi.v_phi - psi.v_theta).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn psi_matches_numerical_gradient() {
        let h = 1e-6;
        let d = Direction::new(1.0, 2.0).unwrap();
        for l in 1..8usize {
            for m in -(l as i64)..=l as i64 {
                let v = vsh_eval(l, m, d).unwrap();
                let yt = |th: f64, ph: f64| scalar_sh(l, m, Direction::new(th, ph).unwrap()).unwrap();
                let dth = (yt(1.0 + h, 2.0) - yt(1.0 - h, 2.0)) / (2.0 * h);
                let dph = (yt(1.0, 2.0 + h) - yt(1.0, 2.0 - h)) / (2.0 * h) / 1.0f64.sin();
                assert!((v.psi.v_theta - dth).norm() < 1e-7);
                assert!((v.psi.v_phi - dph).norm() < 1e-7);
            }
        }
    }

    #[test]
    fn poles_are_finite() {
        for &th in &[0.0, PI] {
            let d = Direction::new(th, 0.3).unwrap();
            let t = ShTable::with_gradients(20, d);
            for l in 0..=20usize {
                for m in -(l as i64)..=l as i64 {
                    assert!(t.psi(l, m).norm_sqr().is_finite());
                }
            }
        }
    }

    #[test]
    fn order_out_of_range() {
        let d = Direction::new(1.0, 1.0).unwrap();
        assert!(scalar_sh(2, 3, d).is_err());
        assert!(vsh_eval(2, -3, d).is_err());
    }
}
