//! The exact far-field operator: angular spectrum of the outgoing wave
//! radiated by a current ensemble, and the `E`/`H` fields it implies far
//! from the source.
//!
//! With the `e^{jωt}` phasor convention the angular spectrum is
//!
//! `f(r̂) = ωμ₀/(j·4π·√Z₀) · (I₃ − r̂r̂ᵀ) · Σᵢ e^{jk·r̂ᵀrᵢ} wᵢ pᵢ`
//!
//! and the radiated field at distance `r` is `E ≈ √Z₀ f e^{−jkr}/r`,
//! `H ≈ (r̂ × f) e^{−jkr}/(r√Z₀)`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::context::FrequencyContext;
use crate::discretization::{CurrentEnsemble, SampledField, SphereQuadrature};
use crate::specfun::{Direction, TangentVector};
use crate::vec3::{dot, rcross, transverse, CVec3, RVec3, CZERO3};
use crate::{Error, Result};

/// `ωμ₀/(j·4π·√Z₀)`
pub fn radiation_prefactor(ctx: &FrequencyContext) -> Complex64 {
    Complex64::new(0.0, -ctx.spectrum_scale() / (4.0 * PI))
}

fn spectrum_at(j: &CurrentEnsemble, r_hat: &RVec3, ctx: &FrequencyContext, pre: Complex64) -> CVec3 {
    let k = ctx.wavenumber();
    let mut acc = CZERO3;
    for s in j.sources() {
        let phase = Complex64::from_polar(s.weight, k * dot(r_hat, &s.position));
        for (a, m) in acc.iter_mut().zip(&s.moment) {
            *a += phase * m;
        }
    }
    let t = transverse(r_hat, &acc);
    t.map(|c| c * pre)
}

/// Angular spectrum in a single direction.
pub fn far_field_at(j: &CurrentEnsemble, dir: Direction, ctx: &FrequencyContext) -> Result<CVec3> {
    j.check_contained(ctx.radius())?;
    Ok(spectrum_at(j, &dir.unit_vector(), ctx, radiation_prefactor(ctx)))
}

/// Angular spectrum sampled at every node of `grid`.
///
/// Nodes are evaluated in parallel; the sum over sources always runs in
/// source order, so results do not depend on the schedule.
pub fn direct_far_field(
    j: &CurrentEnsemble,
    grid: &Arc<SphereQuadrature>,
    ctx: &FrequencyContext,
) -> Result<SampledField> {
    j.check_contained(ctx.radius())?;
    let pre = radiation_prefactor(ctx);
    let values = grid
        .unit_vectors()
        .par_iter()
        .map(|r_hat| spectrum_at(j, r_hat, ctx, pre))
        .collect();
    SampledField::new(grid.clone(), values)
}

/// Electric (V/m) and magnetic (A/m) field at distance `r` along `dir`.
#[derive(Debug, Clone, Copy)]
pub struct FarFieldSample {
    pub e: CVec3,
    pub h: CVec3,
    pub r: f64,
    pub dir: Direction,
}

pub fn em_far_field(spectrum: &TangentVector, r: f64, ctx: &FrequencyContext) -> Result<FarFieldSample> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::domain(format!("observation radius must be positive, got {r}")));
    }
    let f = spectrum.to_cartesian();
    let r_hat = spectrum.dir.unit_vector();
    let z0 = ctx.impedance().sqrt();
    let wave = Complex64::from_polar(1.0 / r, -ctx.wavenumber() * r);
    let e = f.map(|c| c * wave * z0);
    let h = rcross(&r_hat, &f).map(|c| c * wave / z0);
    Ok(FarFieldSample {
        e,
        h,
        r,
        dir: spectrum.dir,
    })
}
