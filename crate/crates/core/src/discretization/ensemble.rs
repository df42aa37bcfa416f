use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::vec3::{cnorm, cnorm_sqr, norm, CVec3, RVec3};
use crate::{Error, Result};

/// One weighted point source: a current moment (A·m) carried by a volume
/// element of size `weight` (m³) at `position`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSource {
    pub position: RVec3,
    pub moment: CVec3,
    pub weight: f64,
}

/// A discretized current density as weighted point sources inside the ball
/// of radius `radius` centred at the origin.
///
/// The discrete `L²(V)` norm is `Σ weight·‖moment‖²`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentEnsemble {
    radius: f64,
    sources: Vec<PointSource>,
}

impl CurrentEnsemble {
    pub fn new(radius: f64, sources: Vec<PointSource>) -> Result<Self> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::domain(format!("ensemble radius {radius} must be >= 0")));
        }
        for (index, s) in sources.iter().enumerate() {
            let distance = norm(&s.position);
            if !(distance <= radius) {
                return Err(Error::Containment {
                    index,
                    distance,
                    radius,
                });
            }
            if !(s.weight.is_finite() && s.weight > 0.0) {
                return Err(Error::domain(format!("source {index} has non-positive weight {}", s.weight)));
            }
            if !s.moment.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::domain(format!("source {index} has a non-finite moment")));
            }
        }
        Ok(Self { radius, sources })
    }

    pub fn empty(radius: f64) -> Result<Self> {
        Self::new(radius, Vec::new())
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn sources(&self) -> &[PointSource] {
        &self.sources
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.sources
            .iter()
            .map(|s| s.weight * cnorm_sqr(&s.moment))
            .sum::<f64>()
            .sqrt()
    }

    /// Same positions and weights with new moments.
    pub fn with_moments(&self, moments: &[CVec3]) -> Result<Self> {
        if moments.len() != self.sources.len() {
            return Err(Error::domain(format!(
                "{} moments for {} sources",
                moments.len(),
                self.sources.len()
            )));
        }
        let sources = self
            .sources
            .iter()
            .zip(moments)
            .map(|(s, m)| PointSource { moment: *m, ..*s })
            .collect();
        Self::new(self.radius, sources)
    }

    /// Fails if any source lies outside the ball of radius `a`.
    pub fn check_contained(&self, a: f64) -> Result<()> {
        for (index, s) in self.sources.iter().enumerate() {
            let distance = norm(&s.position);
            if !(distance <= a) {
                return Err(Error::Containment {
                    index,
                    distance,
                    radius: a,
                });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&EnsembleDoc::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: EnsembleDoc = serde_json::from_str(text)?;
        doc.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct SourceDoc {
    pos: [f64; 3],
    moment_re: [f64; 3],
    moment_im: [f64; 3],
    weight: f64,
}

#[derive(Serialize, Deserialize)]
struct EnsembleDoc {
    radius: f64,
    sources: Vec<SourceDoc>,
}

impl From<&CurrentEnsemble> for EnsembleDoc {
    fn from(e: &CurrentEnsemble) -> Self {
        Self {
            radius: e.radius,
            sources: e
                .sources
                .iter()
                .map(|s| SourceDoc {
                    pos: s.position,
                    moment_re: s.moment.map(|c| c.re),
                    moment_im: s.moment.map(|c| c.im),
                    weight: s.weight,
                })
                .collect(),
        }
    }
}

impl TryFrom<EnsembleDoc> for CurrentEnsemble {
    type Error = Error;

    fn try_from(doc: EnsembleDoc) -> Result<Self> {
        let sources = doc
            .sources
            .into_iter()
            .map(|s| PointSource {
                position: s.pos,
                moment: [0, 1, 2].map(|i| Complex64::new(s.moment_re[i], s.moment_im[i])),
                weight: s.weight,
            })
            .collect();
        CurrentEnsemble::new(doc.radius, sources)
    }
}

/// `n` sources uniformly distributed in the ball of radius `a`, each with a
/// random unit-norm complex moment and weight `(4/3)πa³/n`. Deterministic
/// for a given seed.
pub fn random_current_ensemble(a: f64, n: usize, seed: u64) -> Result<CurrentEnsemble> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::domain(format!("ball radius must be positive, got {a}")));
    }
    if n == 0 {
        return Err(Error::domain("ensemble needs at least one source"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weight = 4.0 / 3.0 * PI * a.powi(3) / n as f64;
    let sources = (0..n)
        .map(|_| {
            let position = loop {
                let g: RVec3 = [0; 3].map(|_| rng.sample::<f64, _>(StandardNormal));
                let len = norm(&g);
                if len < 1e-12 {
                    continue;
                }
                let r = a * rng.random::<f64>().cbrt();
                let mut p = g.map(|c| c * r / len);
                let d = norm(&p);
                if d > a {
                    p = p.map(|c| c * a / d);
                }
                break p;
            };
            let moment = loop {
                let m: CVec3 = [0; 3].map(|_| {
                    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
                });
                let len = cnorm(&m);
                if len > 1e-12 {
                    break m.map(|c| c / len);
                }
            };
            PointSource {
                position,
                moment,
                weight,
            }
        })
        .collect();
    CurrentEnsemble::new(a, sources)
}

/// A single unit-weight source at the origin.
pub fn dipole_at_origin(moment: CVec3) -> CurrentEnsemble {
    CurrentEnsemble {
        radius: 0.0,
        sources: vec![PointSource {
            position: [0.0; 3],
            moment,
            weight: 1.0,
        }],
    }
}
