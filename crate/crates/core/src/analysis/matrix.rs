use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::context::FrequencyContext;
use crate::discretization::{CurrentEnsemble, SampledField, SphereQuadrature};
use crate::expansion::{source_projection, truncation_prefactor};
use crate::radiation::radiation_prefactor;
use crate::specfun::{ShTable, TangentVector};
use crate::vec3::{dot, CVec3, RVec3};
use crate::{Error, Result};

/// A radiation-type operator discretized so that Euclidean norms equal the
/// discrete `L²` norms of sources and fields.
///
/// Row `2n` (`2n+1`) holds the θ (φ) component at node `n` times `√wₙ`;
/// column `3i + e` is the unit moment along Cartesian axis `e` at source
/// `i`, times `√wᵢ`.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    matrix: DMatrix<Complex64>,
    grid: Arc<SphereQuadrature>,
    source_weights: Vec<f64>,
}

impl OperatorMatrix {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn grid(&self) -> &Arc<SphereQuadrature> {
        &self.grid
    }

    pub fn nrows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.matrix.ncols()
    }

    /// Weighted input vector for the given per-source moments.
    pub fn input_vector(&self, moments: &[CVec3]) -> Result<DVector<Complex64>> {
        if moments.len() != self.source_weights.len() {
            return Err(Error::domain(format!(
                "{} moments for {} sources",
                moments.len(),
                self.source_weights.len()
            )));
        }
        let mut v = DVector::zeros(3 * moments.len());
        for (i, (p, w)) in moments.iter().zip(&self.source_weights).enumerate() {
            let s = w.sqrt();
            for e in 0..3 {
                v[3 * i + e] = p[e] * s;
            }
        }
        Ok(v)
    }

    /// Undoes the row weighting, giving Cartesian samples on the grid.
    pub fn output_field(&self, y: &DVector<Complex64>) -> Result<SampledField> {
        if y.len() != self.matrix.nrows() {
            return Err(Error::domain(format!("output vector has length {}, expected {}", y.len(), self.matrix.nrows())));
        }
        let values = self
            .grid
            .nodes()
            .iter()
            .zip(self.grid.weights())
            .enumerate()
            .map(|(n, (d, w))| {
                let s = 1.0 / w.sqrt();
                TangentVector {
                    dir: *d,
                    v_theta: y[2 * n] * s,
                    v_phi: y[2 * n + 1] * s,
                }
                .to_cartesian()
            })
            .collect();
        SampledField::new(self.grid.clone(), values)
    }

    pub fn apply(&self, moments: &[CVec3]) -> Result<SampledField> {
        let x = self.input_vector(moments)?;
        self.output_field(&(&self.matrix * x))
    }
}

struct Frames {
    theta_hat: Vec<RVec3>,
    phi_hat: Vec<RVec3>,
    sqrt_w: Vec<f64>,
}

impl Frames {
    fn new(grid: &SphereQuadrature) -> Self {
        Self {
            theta_hat: grid.nodes().iter().map(|d| d.theta_hat()).collect(),
            phi_hat: grid.nodes().iter().map(|d| d.phi_hat()).collect(),
            sqrt_w: grid.weights().iter().map(|w| w.sqrt()).collect(),
        }
    }
}

/// Builds the matrix whose column `(i, e)` is
/// `scale · √wᵢ · (I − r̂r̂ᵀ) ê · kernel(n, i)` at each node `n`.
pub(crate) fn matrix_from_kernel(
    basis: &CurrentEnsemble,
    grid: &Arc<SphereQuadrature>,
    scale: Complex64,
    kernel: impl Fn(usize, usize) -> Complex64 + Sync,
) -> OperatorMatrix {
    let frames = Frames::new(grid);
    let rows = 2 * grid.len();
    let cols = 3 * basis.len();
    let mut data = vec![Complex64::new(0.0, 0.0); rows * cols];
    if rows > 0 {
        data.par_chunks_mut(3 * rows).enumerate().for_each(|(i, chunk)| {
            let s = scale * basis.sources()[i].weight.sqrt();
            for n in 0..grid.len() {
                let k = kernel(n, i) * s * frames.sqrt_w[n];
                for e in 0..3 {
                    chunk[e * rows + 2 * n] = k * frames.theta_hat[n][e];
                    chunk[e * rows + 2 * n + 1] = k * frames.phi_hat[n][e];
                }
            }
        });
    }
    OperatorMatrix {
        matrix: DMatrix::from_vec(rows, cols, data),
        grid: grid.clone(),
        source_weights: basis.sources().iter().map(|s| s.weight).collect(),
    }
}

pub fn assemble_direct_matrix(
    basis: &CurrentEnsemble,
    grid: &Arc<SphereQuadrature>,
    ctx: &FrequencyContext,
) -> Result<OperatorMatrix> {
    basis.check_contained(ctx.radius())?;
    let k = ctx.wavenumber();
    let r_hat = grid.unit_vectors();
    Ok(matrix_from_kernel(basis, grid, radiation_prefactor(ctx), |n, i| {
        Complex64::from_polar(1.0, k * dot(&r_hat[n], &basis.sources()[i].position))
    }))
}

/// Degree-truncated kernels `Σ_{l<L} Σ_m Y_l^m(r̂ₙ) · j^l j_l(k rᵢ) conj(Y_l^m(r̂ᵢ))`,
/// accumulated one degree at a time.
pub(crate) struct TruncatedKernel {
    node_y: Vec<Vec<Complex64>>,
    source_proj: Vec<Vec<Complex64>>,
    n_sources: usize,
    degrees: usize,
    values: Vec<Complex64>,
}

impl TruncatedKernel {
    pub(crate) fn new(basis: &CurrentEnsemble, grid: &SphereQuadrature, k: f64, max_degrees: usize) -> Self {
        let node_y = if max_degrees == 0 {
            vec![Vec::new(); grid.len()]
        } else {
            grid.nodes()
                .par_iter()
                .map(|d| ShTable::new(max_degrees - 1, *d).values().to_vec())
                .collect()
        };
        let source_proj = basis
            .sources()
            .par_iter()
            .map(|s| source_projection(&s.position, k, max_degrees))
            .collect();
        Self {
            node_y,
            source_proj,
            n_sources: basis.len(),
            degrees: 0,
            values: vec![Complex64::new(0.0, 0.0); grid.len() * basis.len()],
        }
    }

    /// Adds degree `l = self.degrees()`.
    pub(crate) fn push_degree(&mut self) {
        let l = self.degrees;
        let range = l * l..(l + 1) * (l + 1);
        let ns = self.n_sources;
        if ns > 0 {
            let (node_y, source_proj) = (&self.node_y, &self.source_proj);
            self.values.par_chunks_mut(ns).enumerate().for_each(|(n, row)| {
                let y = &node_y[n][range.clone()];
                for (v, p) in row.iter_mut().zip(source_proj) {
                    *v += y.iter().zip(&p[range.clone()]).map(|(a, b)| a * b).sum::<Complex64>();
                }
            });
        }
        self.degrees += 1;
    }

    pub(crate) fn degrees(&self) -> usize {
        self.degrees
    }

    pub(crate) fn get(&self, node: usize, source: usize) -> Complex64 {
        self.values[node * self.n_sources + source]
    }
}

/// The discretized `K̃_L`: multipole coefficients of degree `< L` followed by
/// synthesis. The grid must have exactness `≥ 2(L+1)`.
pub fn assemble_truncated_matrix(
    basis: &CurrentEnsemble,
    grid: &Arc<SphereQuadrature>,
    ctx: &FrequencyContext,
    degree_count: usize,
) -> Result<OperatorMatrix> {
    basis.check_contained(ctx.radius())?;
    grid.require_exactness(2 * (degree_count + 1))?;
    let mut kernel = TruncatedKernel::new(basis, grid, ctx.wavenumber(), degree_count);
    while kernel.degrees() < degree_count {
        kernel.push_degree();
    }
    Ok(matrix_from_kernel(basis, grid, truncation_prefactor(ctx), |n, i| kernel.get(n, i)))
}
