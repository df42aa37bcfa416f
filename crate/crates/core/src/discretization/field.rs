use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex64;

use super::quadrature::{sphere_grid, SphereQuadrature};
use crate::specfun::{Direction, TangentVector};
use crate::vec3::{cadd, cdot, cnorm_sqr, cscale, csub, CVec3, CZERO3};
use crate::{Error, Result};

/// A complex vector field sampled at the nodes of a sphere quadrature.
#[derive(Debug, Clone)]
pub struct SampledField {
    grid: Arc<SphereQuadrature>,
    values: Vec<CVec3>,
}

pub const CSV_HEADER: &str = "theta,phi,weight,x_re,x_im,y_re,y_im,z_re,z_im";

impl SampledField {
    pub fn new(grid: Arc<SphereQuadrature>, values: Vec<CVec3>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Parse(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Arc<SphereQuadrature>) -> Self {
        let values = vec![CZERO3; grid.len()];
        Self { grid, values }
    }

    pub fn from_fn(grid: Arc<SphereQuadrature>, f: impl Fn(Direction) -> CVec3) -> Self {
        let values = grid.nodes().iter().map(|d| f(*d)).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &Arc<SphereQuadrature> {
        &self.grid
    }

    pub fn values(&self) -> &[CVec3] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [CVec3] {
        &mut self.values
    }

    pub fn tangent(&self, node: usize) -> TangentVector {
        TangentVector::from_cartesian(self.grid.nodes()[node], &self.values[node])
    }

    fn check_grid(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Discrete `L²(Ω, C³)` inner product, linear in `self`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        self.check_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .zip(self.grid.weights())
            .map(|((u, v), w)| cdot(u, v) * *w)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.values
            .iter()
            .zip(self.grid.weights())
            .map(|(v, w)| cnorm_sqr(v) * w)
            .sum::<f64>()
            .sqrt()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| cadd(a, b)).collect();
        Ok(Self {
            grid: self.grid.clone(),
            values,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| csub(a, b)).collect();
        Ok(Self {
            grid: self.grid.clone(),
            values,
        })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| cscale(v, s)).collect(),
        }
    }

    /// Largest pointwise Euclidean norm.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| cnorm_sqr(v).sqrt()).fold(0.0, f64::max)
    }

    /// One row per node: `theta,phi,weight` then real and imaginary parts of
    /// the Cartesian components, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(self.values.len() * 220);
        s.push_str(CSV_HEADER);
        s.push('\n');
        for ((d, w), v) in self.grid.nodes().iter().zip(self.grid.weights()).zip(&self.values) {
            let _ = write!(s, "{:.16e},{:.16e},{:.16e}", d.theta(), d.phi(), w);
            for c in v {
                let _ = write!(s, ",{:.16e},{:.16e}", c.re, c.im);
            }
            s.push('\n');
        }
        s
    }

    /// Parses [`SampledField::to_csv`] output. The grid degree is inferred
    /// from the row count and the listed nodes and weights must match it.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty field CSV".into()))?;
        if header.trim() != CSV_HEADER {
            return Err(Error::Parse(format!("unexpected header {header:?}")));
        }
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let cells: Vec<f64> = line
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("row {}: {e}", i + 1)))?;
            if cells.len() != 9 {
                return Err(Error::Parse(format!("row {} has {} columns, expected 9", i + 1, cells.len())));
            }
            rows.push(cells);
        }
        let l_max = grid_degree_for(rows.len())
            .ok_or_else(|| Error::Parse(format!("{} rows do not form a product grid", rows.len())))?;
        let grid = Arc::new(sphere_grid(l_max));
        let mut values = Vec::with_capacity(rows.len());
        for (i, (row, (d, w))) in rows.iter().zip(grid.nodes().iter().zip(grid.weights())).enumerate() {
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs().max(1.0);
            if !(close(row[0], d.theta()) && close(row[1], d.phi()) && close(row[2], *w)) {
                return Err(Error::Parse(format!("row {} does not match grid node", i + 1)));
            }
            values.push([
                Complex64::new(row[3], row[4]),
                Complex64::new(row[5], row[6]),
                Complex64::new(row[7], row[8]),
            ]);
        }
        Ok(Self { grid, values })
    }
}

/// `L` with `(L+1)(2L+1) = n`, if any.
fn grid_degree_for(n: usize) -> Option<usize> {
    (0..).map(|l: usize| (l, (l + 1) * (2 * l + 1))).take_while(|&(_, c)| c <= n).find(|&(_, c)| c == n).map(|(l, _)| l)
}
