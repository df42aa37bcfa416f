use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::bound::{error_bound, ErrorBound};
use super::matrix::{assemble_direct_matrix, matrix_from_kernel, TruncatedKernel};
use super::norm::{operator_norm, NormEstimate, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::context::FrequencyContext;
use crate::discretization::{sphere_grid, CurrentEnsemble, SphereQuadrature};
use crate::expansion::truncation_prefactor;
use crate::specfun::ShTable;
use crate::{Error, Result};

pub const SWEEP_CSV_HEADER: &str = "L,empirical_error,bound,beta,wall_time_s";

/// Errors below this fraction of `‖A‖` are at the double-precision floor.
pub const NOISE_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone)]
pub struct SweepScenario {
    pub ctx: FrequencyContext,
    pub basis: CurrentEnsemble,
    pub l_min: usize,
    pub l_max: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_iter: usize,
}

impl SweepScenario {
    pub fn new(ctx: FrequencyContext, basis: CurrentEnsemble, l_min: usize, l_max: usize, seed: u64) -> Self {
        Self {
            ctx,
            basis,
            l_min,
            l_max,
            seed,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    #[serde(rename = "L")]
    pub l: usize,
    /// `‖A − A_L‖` with `A_L` built from degrees `< L`.
    pub empirical_error: f64,
    /// `‖A − P_L A‖` with `P_L` keeping degrees `≤ L`.
    pub projection_error: f64,
    pub bound: Option<f64>,
    pub beta: Option<f64>,
    pub wall_time_s: f64,
    pub converged: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorSweep {
    pub ka: f64,
    #[serde(rename = "L_B")]
    pub l_b: usize,
    pub alpha: f64,
    pub operator_norm: f64,
    pub grid_l_max: usize,
    pub records: Vec<SweepRecord>,
}

impl ErrorSweep {
    pub fn all_converged(&self) -> bool {
        self.records.iter().all(|r| r.converged)
    }

    pub fn record(&self, l: usize) -> Option<&SweepRecord> {
        self.records.iter().find(|r| r.l == l)
    }

    /// Per-step decay rates `−ln(err(L+1)/err(L))` of the truncation
    /// error, keyed by `L`, for consecutive records with both errors at or
    /// above `floor · ‖A‖`.
    pub fn decay_rates(&self, floor: f64) -> Vec<(usize, f64)> {
        let cut = floor * self.operator_norm;
        self.records
            .windows(2)
            .filter(|w| w[1].l == w[0].l + 1)
            .filter(|w| w[0].empirical_error >= cut && w[1].empirical_error >= cut)
            .map(|w| (w[0].l, -(w[1].empirical_error / w[0].empirical_error).ln()))
            .collect()
    }

    /// CSV with 17 significant digits; the timing column is left empty
    /// unless `timing` is set so that repeated runs are byte-identical.
    pub fn to_csv(&self, timing: bool) -> String {
        let mut out = String::from(SWEEP_CSV_HEADER);
        out.push('\n');
        let opt = |v: Option<f64>| v.map(|x| format!("{x:.16e}")).unwrap_or_default();
        for r in &self.records {
            let t = if timing { format!("{:.6}", r.wall_time_s) } else { String::new() };
            let _ = writeln!(
                out,
                "{},{:.16e},{},{},{}",
                r.l,
                r.empirical_error,
                opt(r.bound),
                opt(r.beta),
                t
            );
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Weighted orthonormal tangential basis `Ψ/√(l(l+1))`, `Φ/√(l(l+1))` for
/// degrees `1..=l_max`, laid out like [`super::OperatorMatrix`] rows.
/// Columns of degree `l` occupy `2(l²−1)..2((l+1)²−1)`.
pub(crate) fn tangential_basis(grid: &SphereQuadrature, l_max: usize) -> DMatrix<Complex64> {
    let rows = 2 * grid.len();
    let cols = 2 * ((l_max + 1) * (l_max + 1) - 1);
    let mut b = DMatrix::zeros(rows, cols);
    for (n, d) in grid.nodes().iter().enumerate() {
        let tab = ShTable::with_gradients(l_max, *d);
        let sw = grid.weights()[n].sqrt();
        let mut col = 0;
        for l in 1..=l_max {
            let s = sw / ((l * (l + 1)) as f64).sqrt();
            for m in -(l as i64)..=l as i64 {
                for t in [tab.psi(l, m), tab.phi(l, m)] {
                    b[(2 * n, col)] = t.v_theta * s;
                    b[(2 * n + 1, col)] = t.v_phi * s;
                    col += 1;
                }
            }
        }
    }
    b
}

fn degree_columns(l: usize) -> (usize, usize) {
    (2 * (l * l - 1), 2 * (2 * l + 1))
}

/// Operator-norm error of the truncated (`K`) and projected (`P`)
/// approximations for every `L` in `l_min..=l_max`.
///
/// Norms are taken on the discretized source space, so they can only
/// underestimate the continuous operator norms; the grid resolves degree
/// `l_max + 2`.
pub fn error_sweep(scenario: &SweepScenario) -> Result<ErrorSweep> {
    let SweepScenario { ctx, basis, l_min, l_max, seed, tol, max_iter } = scenario;
    let (l_min, l_max) = (*l_min, *l_max);
    if l_min > l_max {
        return Err(Error::domain(format!("L_min = {l_min} exceeds L_max = {l_max}")));
    }
    let bound: ErrorBound = error_bound(ctx)?;
    let grid_l_max = l_max + 2;
    let grid = Arc::new(sphere_grid(grid_l_max));
    let a = assemble_direct_matrix(basis, &grid, ctx)?.into_matrix();
    let a_norm = operator_norm(&a, *seed, *tol, *max_iter);

    let mut kernel = TruncatedKernel::new(basis, &grid, ctx.wavenumber(), l_max);
    let b = tangential_basis(&grid, l_max);
    let coeffs = b.ad_mul(&a);
    let mut residual = a.clone();
    let pre = truncation_prefactor(ctx);

    let mut records = Vec::with_capacity(l_max - l_min + 1);
    for l in 0..=l_max {
        let start = Instant::now();
        if l > 0 {
            let (c0, nc) = degree_columns(l);
            residual.gemm(
                Complex64::new(-1.0, 0.0),
                &b.columns(c0, nc),
                &coeffs.rows(c0, nc),
                Complex64::new(1.0, 0.0),
            );
        }
        if l >= l_min {
            let a_l = matrix_from_kernel(basis, &grid, pre, |n, i| kernel.get(n, i)).into_matrix();
            let step_seed = seed.wrapping_add(l as u64 + 1);
            let k_est: NormEstimate = operator_norm(&(a_l - &a), step_seed, *tol, *max_iter);
            let p_est = operator_norm(&residual, step_seed, *tol, *max_iter);
            let (bnd, beta) = if l >= bound.l_b() {
                (Some(bound.evaluate(l)?), Some(bound.beta(l)?))
            } else {
                (None, None)
            };
            records.push(SweepRecord {
                l,
                empirical_error: k_est.value,
                projection_error: p_est.value,
                bound: bnd,
                beta,
                wall_time_s: 0.0,
                converged: k_est.converged && p_est.converged,
                iterations: k_est.iterations + p_est.iterations,
            });
        }
        if l < l_max {
            kernel.push_degree();
        }
        if let Some(r) = records.last_mut().filter(|r| r.l == l) {
            r.wall_time_s = start.elapsed().as_secs_f64();
        }
    }
    let mut out = ErrorSweep {
        ka: ctx.ka(),
        l_b: bound.l_b(),
        alpha: bound.alpha(),
        operator_norm: a_norm.value,
        grid_l_max,
        records,
    };
    if !a_norm.converged {
        if let Some(r) = out.records.first_mut() {
            r.converged = false;
        }
    }
    Ok(out)
}
