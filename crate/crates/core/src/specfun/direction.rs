use std::f64::consts::PI;

use num_complex::Complex64;

use crate::vec3::{norm, CVec3, RVec3};
use crate::{Error, Result};

/// A point on the unit sphere in physics convention: polar angle `theta`
/// in `[0, π]`, azimuth `phi` in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    theta: f64,
    phi: f64,
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::domain(format!("polar angle {theta} outside [0, pi]")));
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::domain(format!("azimuth {phi} outside [0, 2pi)")));
        }
        Ok(Self { theta, phi })
    }

    /// Like [`Direction::new`] but wraps the azimuth into `[0, 2π)`.
    pub fn wrapped(theta: f64, phi: f64) -> Result<Self> {
        Self::new(theta, wrap_azimuth(phi))
    }

    /// Direction of a nonzero vector.
    pub fn from_vector(v: &RVec3) -> Result<Self> {
        let r = norm(v);
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::domain("direction of a zero or non-finite vector"));
        }
        let theta = (v[2] / r).clamp(-1.0, 1.0).acos();
        let phi = wrap_azimuth(v[1].atan2(v[0]));
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `r̂`
    pub fn unit_vector(&self) -> RVec3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// `θ̂`
    pub fn theta_hat(&self) -> RVec3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [ct * cp, ct * sp, -st]
    }

    /// `φ̂`
    pub fn phi_hat(&self) -> RVec3 {
        let (sp, cp) = self.phi.sin_cos();
        [-sp, cp, 0.0]
    }
}

fn wrap_azimuth(phi: f64) -> f64 {
    let w = phi.rem_euclid(2.0 * PI);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if w >= 2.0 * PI {
        0.0
    } else {
        w
    }
}

/// A complex vector tangent to the sphere at `dir`, stored by its components
/// along the local `θ̂` and `φ̂` unit vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    pub dir: Direction,
    pub v_theta: Complex64,
    pub v_phi: Complex64,
}

impl TangentVector {
    pub fn zero(dir: Direction) -> Self {
        Self {
            dir,
            v_theta: Complex64::new(0.0, 0.0),
            v_phi: Complex64::new(0.0, 0.0),
        }
    }

    /// Tangential components of an arbitrary Cartesian vector at `dir`.
    pub fn from_cartesian(dir: Direction, v: &CVec3) -> Self {
        let th = dir.theta_hat();
        let ph = dir.phi_hat();
        Self {
            dir,
            v_theta: v[0] * th[0] + v[1] * th[1] + v[2] * th[2],
            v_phi: v[0] * ph[0] + v[1] * ph[1],
        }
    }

    /// Embedding into C³ through the local frame.
    pub fn to_cartesian(&self) -> CVec3 {
        let th = self.dir.theta_hat();
        let ph = self.dir.phi_hat();
        [
            self.v_theta * th[0] + self.v_phi * ph[0],
            self.v_theta * th[1] + self.v_phi * ph[1],
            self.v_theta * th[2],
        ]
    }

    /// `r̂ × v`, which maps `(v_θ, v_φ)` to `(−v_φ, v_θ)`.
    pub fn rotate_quarter(&self) -> Self {
        Self {
            dir: self.dir,
            v_theta: -self.v_phi,
            v_phi: self.v_theta,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.v_theta.norm_sqr() + self.v_phi.norm_sqr()
    }
}
