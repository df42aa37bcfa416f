//! Small fixed-size vector helpers for real and complex 3-vectors.

use num_complex::Complex64;

pub type RVec3 = [f64; 3];
pub type CVec3 = [Complex64; 3];

pub const CZERO3: CVec3 = [Complex64::new(0.0, 0.0); 3];

#[inline]
pub fn dot(a: &RVec3, b: &RVec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn norm(a: &RVec3) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn cross(a: &RVec3, b: &RVec3) -> RVec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// `aᵀ v` for real `a` and complex `v` (no conjugation).
#[inline]
pub fn rdot(a: &RVec3, v: &CVec3) -> Complex64 {
    v[0] * a[0] + v[1] * a[1] + v[2] * a[2]
}

/// `r × v` for real `r` and complex `v`.
#[inline]
pub fn rcross(r: &RVec3, v: &CVec3) -> CVec3 {
    [
        v[2] * r[1] - v[1] * r[2],
        v[0] * r[2] - v[2] * r[0],
        v[1] * r[0] - v[0] * r[1],
    ]
}

/// Hermitian inner product `Σ u_i conj(v_i)`, linear in the first argument.
#[inline]
pub fn cdot(u: &CVec3, v: &CVec3) -> Complex64 {
    u[0] * v[0].conj() + u[1] * v[1].conj() + u[2] * v[2].conj()
}

#[inline]
pub fn cnorm_sqr(v: &CVec3) -> f64 {
    v[0].norm_sqr() + v[1].norm_sqr() + v[2].norm_sqr()
}

#[inline]
pub fn cnorm(v: &CVec3) -> f64 {
    cnorm_sqr(v).sqrt()
}

#[inline]
pub fn cscale(v: &CVec3, s: Complex64) -> CVec3 {
    [v[0] * s, v[1] * s, v[2] * s]
}

#[inline]
pub fn cadd(a: &CVec3, b: &CVec3) -> CVec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn csub(a: &CVec3, b: &CVec3) -> CVec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Applies the transverse projector `I₃ − r̂r̂ᵀ` to `v`.
#[inline]
pub fn transverse(r_hat: &RVec3, v: &CVec3) -> CVec3 {
    let radial = rdot(r_hat, v);
    [
        v[0] - radial * r_hat[0],
        v[1] - radial * r_hat[1],
        v[2] - radial * r_hat[2],
    ]
}

/// Real vector embedded as a complex one.
#[inline]
pub fn complexify(a: &RVec3) -> CVec3 {
    [a[0].into(), a[1].into(), a[2].into()]
}
