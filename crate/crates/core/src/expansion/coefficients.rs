use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::context::FrequencyContext;
use crate::discretization::{CurrentEnsemble, SampledField, SphereQuadrature};
use crate::specfun::{sh_count, sh_index, spherical_bessel_j, Direction, ShTable};
use crate::vec3::{norm, transverse, CVec3, RVec3, CZERO3};
use crate::{Error, Result};

/// Multipole coefficients `c_{l,m} ∈ C³` for `0 ≤ |m| ≤ l < L`:
///
/// `c_{l,m} = j^l Σᵢ j_l(k‖rᵢ‖) · conj(Y_l^m(r̂ᵢ)) · wᵢ pᵢ`
///
/// Stored in [`sh_index`] order, `L²` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct MultipoleCoefficients {
    degree_count: usize,
    coeffs: Vec<CVec3>,
}

impl MultipoleCoefficients {
    pub fn zeros(degree_count: usize) -> Self {
        Self {
            degree_count,
            coeffs: vec![CZERO3; sh_count(degree_count)],
        }
    }

    /// `L`: the expansion covers degrees `0..L`.
    pub fn degree_count(&self) -> usize {
        self.degree_count
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, l: usize, m: i64) -> CVec3 {
        self.coeffs[sh_index(l, m)]
    }

    pub fn as_slice(&self) -> &[CVec3] {
        &self.coeffs
    }

    pub fn as_mut_slice(&mut self) -> &mut [CVec3] {
        &mut self.coeffs
    }

    pub fn to_json(&self) -> Result<String> {
        let mut entries = Vec::with_capacity(self.coeffs.len());
        for l in 0..self.degree_count {
            for m in -(l as i64)..=l as i64 {
                let c = self.get(l, m);
                entries.push(CoeffDoc {
                    l,
                    m,
                    re: c.map(|z| z.re),
                    im: c.map(|z| z.im),
                });
            }
        }
        Ok(serde_json::to_string_pretty(&CoeffsDoc {
            degree_count: self.degree_count,
            coeffs: entries,
        })?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CoeffsDoc = serde_json::from_str(text)?;
        let mut out = Self::zeros(doc.degree_count);
        if doc.coeffs.len() != out.len() {
            return Err(Error::Parse(format!(
                "{} coefficients listed, expected {}",
                doc.coeffs.len(),
                out.len()
            )));
        }
        for e in doc.coeffs {
            if e.l >= doc.degree_count || e.m.unsigned_abs() as usize > e.l {
                return Err(Error::Parse(format!("invalid index (l={}, m={})", e.l, e.m)));
            }
            out.coeffs[sh_index(e.l, e.m)] = [0, 1, 2].map(|i| Complex64::new(e.re[i], e.im[i]));
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffDoc {
    l: usize,
    m: i64,
    re: [f64; 3],
    im: [f64; 3],
}

#[derive(Serialize, Deserialize)]
struct CoeffsDoc {
    #[serde(rename = "L")]
    degree_count: usize,
    coeffs: Vec<CoeffDoc>,
}

/// `j^l · j_l(k‖r‖) · conj(Y_l^m(r̂))` for every `(l, m)` with `l < degree_count`,
/// in [`sh_index`] order. A point at the origin only feeds `l = 0`.
pub(crate) fn source_projection(position: &RVec3, k: f64, degree_count: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); sh_count(degree_count)];
    if degree_count == 0 {
        return out;
    }
    let r = norm(position);
    if r == 0.0 {
        out[0] = Complex64::new(0.5 / std::f64::consts::PI.sqrt(), 0.0);
        return out;
    }
    let dir = Direction::from_vector(position).expect("nonzero position");
    let l_max = degree_count - 1;
    let table = ShTable::new(l_max, dir);
    let bessel = spherical_bessel_j(l_max, k * r).expect("non-negative argument");
    let mut jl = Complex64::new(1.0, 0.0);
    for (l, b) in bessel.iter().enumerate() {
        for m in -(l as i64)..=l as i64 {
            out[sh_index(l, m)] = jl * *b * table.y(l, m).conj();
        }
        jl *= Complex64::new(0.0, 1.0);
    }
    out
}

pub fn multipole_coefficients(
    j: &CurrentEnsemble,
    degree_count: usize,
    ctx: &FrequencyContext,
) -> Result<MultipoleCoefficients> {
    j.check_contained(ctx.radius())?;
    let k = ctx.wavenumber();
    let per_source: Vec<Vec<Complex64>> = j
        .sources()
        .par_iter()
        .map(|s| source_projection(&s.position, k, degree_count))
        .collect();
    let mut out = MultipoleCoefficients::zeros(degree_count);
    // fixed source order per entry
    for (s, proj) in j.sources().iter().zip(&per_source) {
        for (c, p) in out.coeffs.iter_mut().zip(proj) {
            let wp = *p * s.weight;
            for (ci, mi) in c.iter_mut().zip(&s.moment) {
                *ci += wp * mi;
            }
        }
    }
    Ok(out)
}

/// `ωμ₀/(j√Z₀)`
pub fn truncation_prefactor(ctx: &FrequencyContext) -> Complex64 {
    Complex64::new(0.0, -ctx.spectrum_scale())
}

fn synthesize(c: &MultipoleCoefficients, dir: Direction, pre: Complex64) -> CVec3 {
    let mut acc = CZERO3;
    if c.degree_count == 0 {
        return acc;
    }
    let table = ShTable::new(c.degree_count - 1, dir);
    for (coef, y) in c.coeffs.iter().zip(table.values()) {
        for (a, ci) in acc.iter_mut().zip(coef) {
            *a += ci * y;
        }
    }
    transverse(&dir.unit_vector(), &acc).map(|z| z * pre)
}

/// Truncated far field `ωμ₀/(j√Z₀) · (I₃ − r̂r̂ᵀ) · Σ_{l<L} Σ_m c_{l,m} Y_l^m(r̂)`
/// in a single direction.
pub fn truncated_far_field_at(c: &MultipoleCoefficients, dir: Direction, ctx: &FrequencyContext) -> CVec3 {
    synthesize(c, dir, truncation_prefactor(ctx))
}

/// The truncated far field sampled on `grid`; the grid must resolve
/// degree `L + 1` products (exactness `≥ 2(L+1)`).
pub fn truncated_far_field(
    c: &MultipoleCoefficients,
    grid: &Arc<SphereQuadrature>,
    ctx: &FrequencyContext,
) -> Result<SampledField> {
    grid.require_exactness(2 * (c.degree_count + 1))?;
    let pre = truncation_prefactor(ctx);
    let values = grid.nodes().par_iter().map(|d| synthesize(c, *d, pre)).collect();
    SampledField::new(grid.clone(), values)
}
