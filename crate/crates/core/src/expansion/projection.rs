use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::discretization::{SampledField, SphereQuadrature};
use crate::specfun::{sh_count, sh_index, ShTable, TangentVector};
use crate::vec3::{rdot, CVec3, CZERO3};
use crate::Result;

/// Coordinates of a vector field in the basis `{Y r̂, Ψ, Φ}` up to degree
/// `l_max`, each family in [`sh_index`] order. The tangential entries at
/// `l = 0` are always zero.
#[derive(Debug, Clone, PartialEq)]
pub struct VshCoefficients {
    l_max: usize,
    pub radial: Vec<Complex64>,
    pub psi: Vec<Complex64>,
    pub phi: Vec<Complex64>,
}

impl VshCoefficients {
    pub fn zeros(l_max: usize) -> Self {
        let n = sh_count(l_max + 1);
        let z = vec![Complex64::new(0.0, 0.0); n];
        Self {
            l_max,
            radial: z.clone(),
            psi: z.clone(),
            phi: z,
        }
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }
}

fn tables(grid: &SphereQuadrature, l_max: usize) -> Vec<ShTable> {
    grid.nodes().par_iter().map(|d| ShTable::with_gradients(l_max, *d)).collect()
}

fn tangent_dot(a: &TangentVector, b: &TangentVector) -> Complex64 {
    a.v_theta.conj() * b.v_theta + a.v_phi.conj() * b.v_phi
}

/// Quadrature inner products of `field` against every basis field up to
/// degree `l_max`. The grid must have exactness `≥ 2(l_max+1)`.
pub fn vsh_analysis(field: &SampledField, l_max: usize) -> Result<VshCoefficients> {
    let grid = field.grid();
    grid.require_exactness(2 * (l_max + 1))?;
    let tabs = tables(grid, l_max);
    let mut out = VshCoefficients::zeros(l_max);
    for (node, tab) in tabs.iter().enumerate() {
        let w = grid.weights()[node];
        let f = field.values()[node];
        let fr = rdot(&grid.unit_vectors()[node], &f) * w;
        let ft = field.tangent(node);
        for l in 0..=l_max {
            for m in -(l as i64)..=l as i64 {
                let i = sh_index(l, m);
                out.radial[i] += tab.y(l, m).conj() * fr;
                if l > 0 {
                    out.psi[i] += tangent_dot(&tab.psi(l, m), &ft) * w;
                    out.phi[i] += tangent_dot(&tab.phi(l, m), &ft) * w;
                }
            }
        }
    }
    for l in 1..=l_max {
        let inv = 1.0 / (l * (l + 1)) as f64;
        for m in -(l as i64)..=l as i64 {
            let i = sh_index(l, m);
            out.psi[i] *= inv;
            out.phi[i] *= inv;
        }
    }
    Ok(out)
}

/// Evaluates `Σ a Y r̂ + b Ψ + c Φ` on `grid`.
pub fn vsh_synthesis(c: &VshCoefficients, grid: &Arc<SphereQuadrature>) -> Result<SampledField> {
    let l_max = c.l_max;
    let values: Vec<CVec3> = grid
        .nodes()
        .par_iter()
        .zip(grid.unit_vectors())
        .map(|(d, r)| {
            let tab = ShTable::with_gradients(l_max, *d);
            let mut radial = Complex64::new(0.0, 0.0);
            let mut tan = TangentVector::zero(*d);
            for l in 0..=l_max {
                for m in -(l as i64)..=l as i64 {
                    let i = sh_index(l, m);
                    radial += c.radial[i] * tab.y(l, m);
                    if l > 0 {
                        let p = tab.psi(l, m);
                        let q = tab.phi(l, m);
                        tan.v_theta += c.psi[i] * p.v_theta + c.phi[i] * q.v_theta;
                        tan.v_phi += c.psi[i] * p.v_phi + c.phi[i] * q.v_phi;
                    }
                }
            }
            let t = tan.to_cartesian();
            let mut v = CZERO3;
            for a in 0..3 {
                v[a] = t[a] + radial * r[a];
            }
            v
        })
        .collect();
    SampledField::new(grid.clone(), values)
}

/// Orthogonal projection onto the span of all vector spherical harmonics
/// of degree `≤ l_max`.
pub fn project_onto_vl(field: &SampledField, l_max: usize) -> Result<SampledField> {
    let c = vsh_analysis(field, l_max)?;
    vsh_synthesis(&c, field.grid())
}
