//! Product Gauss–Legendre × trapezoid quadrature on the unit sphere.

use std::f64::consts::PI;

use crate::specfun::Direction;

/// Gauss–Legendre nodes and weights on `[−1, 1]`, nodes descending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        weights[i] = w;
        nodes[n - 1 - i] = -x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Quadrature rule on the sphere, integrating products of spherical
/// harmonics up to total degree [`SphereQuadrature::exactness_degree`]
/// exactly.
///
/// Nodes are ordered polar-angle-major: node `i·n_phi + j` sits at the
/// `i`-th Gauss node in `cos θ` (θ ascending) and azimuth `2πj/n_phi`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereQuadrature {
    l_max: usize,
    n_theta: usize,
    n_phi: usize,
    nodes: Vec<Direction>,
    unit_vectors: Vec<[f64; 3]>,
    weights: Vec<f64>,
}

impl SphereQuadrature {
    /// Grid with `l_max + 1` Gauss–Legendre nodes in `cos θ` and `2·l_max + 1`
    /// uniform azimuths.
    pub fn new(l_max: usize) -> Self {
        let n_theta = l_max + 1;
        let n_phi = 2 * l_max + 1;
        let (x, w) = gauss_legendre(n_theta);
        let dphi = 2.0 * PI / n_phi as f64;
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        for (xi, wi) in x.iter().zip(&w) {
            let theta = xi.clamp(-1.0, 1.0).acos();
            for j in 0..n_phi {
                nodes.push(Direction::new(theta, j as f64 * dphi).expect("grid angles in range"));
                weights.push(wi * dphi);
            }
        }
        let unit_vectors = nodes.iter().map(|d| d.unit_vector()).collect();
        Self {
            l_max,
            n_theta,
            n_phi,
            nodes,
            unit_vectors,
            weights,
        }
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    /// Products `Y_l^m · conj(Y_l'^m')` with `l + l' ≤ 2·l_max` integrate exactly.
    pub fn exactness_degree(&self) -> usize {
        2 * self.l_max
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn nodes(&self) -> &[Direction] {
        &self.nodes
    }

    pub fn unit_vectors(&self) -> &[[f64; 3]] {
        &self.unit_vectors
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Fails unless the exactness degree is at least `required`.
    pub fn require_exactness(&self, required: usize) -> crate::Result<()> {
        if self.exactness_degree() < required {
            return Err(crate::Error::InsufficientExactness {
                required,
                available: self.exactness_degree(),
            });
        }
        Ok(())
    }
}

/// Builds the product grid of degree `l_max`.
pub fn sphere_grid(l_max: usize) -> SphereQuadrature {
    SphereQuadrature::new(l_max)
}
