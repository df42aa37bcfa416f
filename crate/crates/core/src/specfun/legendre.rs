//! Legendre polynomials and associated Legendre functions.
//!
//! Associated functions carry the Condon–Shortley phase `(−1)^m`, so that
//! `P_1^1(x) = −√(1−x²)`.

use std::f64::consts::PI;

use crate::{Error, Result};

/// Unnormalized associated Legendre function `P_l^m(x)` for `|m| ≤ l`.
///
/// Negative orders use `P_l^{−m} = (−1)^m (l−m)!/(l+m)! P_l^m`. Values grow
/// factorially with `l`; use [`NormalizedLegendre`] for large degrees.
pub fn assoc_legendre(l: usize, m: i64, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("Legendre argument {x} outside [-1, 1]")));
    }
    let am = m.unsigned_abs() as usize;
    if am > l {
        return Err(Error::domain(format!("order {m} exceeds degree {l}")));
    }

    // P_m^m = (−1)^m (2m−1)!! (1−x²)^{m/2}
    let somx2 = ((1.0 - x) * (1.0 + x)).sqrt();
    let mut pmm = 1.0;
    let mut fact = 1.0;
    for _ in 0..am {
        pmm *= -fact * somx2;
        fact += 2.0;
    }
    let value = if l == am {
        pmm
    } else {
        let mut prev = pmm;
        let mut cur = x * (2 * am + 1) as f64 * pmm;
        for ll in (am + 2)..=l {
            let next = (x * (2 * ll - 1) as f64 * cur - (ll + am - 1) as f64 * prev) / (ll - am) as f64;
            prev = cur;
            cur = next;
        }
        cur
    };

    if m >= 0 {
        Ok(value)
    } else {
        // (l−m)!/(l+m)! for m > 0 as a running product
        let mut ratio = 1.0;
        for t in (l - am + 1)..=(l + am) {
            ratio /= t as f64;
        }
        let sign = if am % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * ratio * value)
    }
}

/// Legendre polynomials `P_0(x) … P_{l_max}(x)`.
pub fn legendre_polynomials(l_max: usize, x: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(l_max + 1);
    p.push(1.0);
    if l_max >= 1 {
        p.push(x);
    }
    for l in 2..=l_max {
        let lf = l as f64;
        let next = ((2.0 * lf - 1.0) * x * p[l - 1] - (lf - 1.0) * p[l - 2]) / lf;
        p.push(next);
    }
    p
}

/// Fully normalized associated Legendre functions at a fixed polar angle,
///
/// `P̃_l^m(cos θ) = √((2l+1)/(4π) · (l−m)!/(l+m)!) · P_l^m(cos θ)`, `0 ≤ m ≤ l`,
///
/// together with `P̃_l^m / sin θ` for `m ≥ 1`, which stays finite at the
/// poles and is produced by the same degree recurrence.
#[derive(Debug, Clone)]
pub struct NormalizedLegendre {
    l_max: usize,
    p: Vec<f64>,
    p_over_sin: Vec<f64>,
}

#[inline]
fn tri(l: usize, m: usize) -> usize {
    l * (l + 1) / 2 + m
}

impl NormalizedLegendre {
    pub fn new(l_max: usize, theta: f64) -> Self {
        let (s, x) = theta.sin_cos();
        let n = tri(l_max, l_max) + 1;
        let mut p = vec![0.0; n];
        let mut q = vec![0.0; n];

        p[0] = 0.5 / PI.sqrt();
        for m in 1..=l_max {
            let c = -((2 * m + 1) as f64 / (2 * m) as f64).sqrt();
            p[tri(m, m)] = c * s * p[tri(m - 1, m - 1)];
            q[tri(m, m)] = if m == 1 {
                c * p[0]
            } else {
                c * s * q[tri(m - 1, m - 1)]
            };
        }
        for m in 0..l_max {
            let f = ((2 * m + 3) as f64).sqrt() * x;
            p[tri(m + 1, m)] = f * p[tri(m, m)];
            q[tri(m + 1, m)] = f * q[tri(m, m)];
            for l in (m + 2)..=l_max {
                let (lf, mf) = (l as f64, m as f64);
                let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
                let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
                p[tri(l, m)] = a * (x * p[tri(l - 1, m)] - b * p[tri(l - 2, m)]);
                q[tri(l, m)] = a * (x * q[tri(l - 1, m)] - b * q[tri(l - 2, m)]);
            }
        }
        // order zero has no finite P/sinθ; it is only ever used multiplied by m
        for l in 0..=l_max {
            q[tri(l, 0)] = 0.0;
        }
        Self {
            l_max,
            p,
            p_over_sin: q,
        }
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    /// `P̃_l^m` for `0 ≤ m ≤ l ≤ l_max`; zero for `m > l`.
    #[inline]
    pub fn value(&self, l: usize, m: usize) -> f64 {
        if m > l {
            0.0
        } else {
            self.p[tri(l, m)]
        }
    }

    /// `P̃_l^m / sin θ` for `1 ≤ m ≤ l`; zero for `m = 0`.
    #[inline]
    pub fn over_sin(&self, l: usize, m: usize) -> f64 {
        if m > l {
            0.0
        } else {
            self.p_over_sin[tri(l, m)]
        }
    }

    /// `d P̃_l^m(cos θ) / dθ`, pole-safe.
    pub fn dtheta(&self, l: usize, m: usize) -> f64 {
        let (lf, mf) = (l as f64, m as f64);
        let up = ((lf - mf) * (lf + mf + 1.0)).sqrt() * self.value(l, m + 1);
        let down = if m == 0 {
            -self.value(l, 1)
        } else {
            self.value(l, m - 1)
        };
        0.5 * (up - ((lf + mf) * (lf - mf + 1.0)).sqrt() * down)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    #[test]
    fn low_order_closed_forms() {
        for &x in &[-1.0, -0.6, 0.0, 0.3, 0.5, 1.0] {
            assert_eq!(assoc_legendre(0, 0, x).unwrap(), 1.0);
            assert!((assoc_legendre(1, 0, x).unwrap() - x).abs() < 1e-15);
            let s = (1.0f64 - x * x).sqrt();
            assert!((assoc_legendre(1, 1, x).unwrap() + s).abs() < 1e-15);
            assert!((assoc_legendre(2, 1, x).unwrap() + 3.0 * x * s).abs() < 1e-14);
            assert!((assoc_legendre(2, 2, x).unwrap() - 3.0 * (1.0 - x * x)).abs() < 1e-14);
        }
        assert!((assoc_legendre(1, 0, 0.5).unwrap() - 0.5).abs() < 1e-15);
        let v = assoc_legendre(2, 1, 0.3).unwrap();
        assert!((v + 0.858_545_281_275_251).abs() < 1e-14);
    }

    #[test]
    fn negative_order_reflection() {
        let x = 0.37;
        for l in 0..8usize {
            for m in 1..=l as i64 {
                let pos = assoc_legendre(l, m, x).unwrap();
                let neg = assoc_legendre(l, -m, x).unwrap();
                let mu = m as usize;
                let expected = (-1f64).powi(m as i32) * factorial(l - mu) / factorial(l + mu) * pos;
                assert!((neg - expected).abs() < 1e-13 * expected.abs().max(1.0));
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(assoc_legendre(2, 0, 1.01).is_err());
        assert!(assoc_legendre(2, 3, 0.0).is_err());
        assert!(assoc_legendre(2, -3, 0.0).is_err());
    }

    #[test]
    fn normalized_matches_unnormalized() {
        let theta = 1.1f64;
        let table = NormalizedLegendre::new(20, theta);
        for l in 0..=20usize {
            for m in 0..=l {
                let norm = ((2 * l + 1) as f64 / (4.0 * PI) * factorial(l - m) / factorial(l + m)).sqrt();
                let expected = norm * assoc_legendre(l, m as i64, theta.cos()).unwrap();
                assert!(
                    (table.value(l, m) - expected).abs() < 1e-12,
                    "l={l} m={m}: {} vs {expected}",
                    table.value(l, m)
                );
                if m >= 1 {
                    assert!((table.over_sin(l, m) - expected / theta.sin()).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn dtheta_matches_finite_difference() {
        let h = 1e-6;
        for &theta in &[0.2, 1.0, 2.5] {
            let plus = NormalizedLegendre::new(12, theta + h);
            let minus = NormalizedLegendre::new(12, theta - h);
            let here = NormalizedLegendre::new(12, theta);
            for l in 0..=12 {
                for m in 0..=l {
                    let fd = (plus.value(l, m) - minus.value(l, m)) / (2.0 * h);
                    assert!((here.dtheta(l, m) - fd).abs() < 1e-7, "l={l} m={m}");
                }
            }
        }
    }

    #[test]
    fn pole_values_are_finite() {
        for &theta in &[0.0, PI] {
            let t = NormalizedLegendre::new(30, theta);
            for l in 0..=30 {
                for m in 0..=l {
                    assert!(t.value(l, m).is_finite());
                    assert!(t.over_sin(l, m).is_finite());
                    assert!(t.dtheta(l, m).is_finite());
                }
            }
        }
    }

    #[test]
    fn legendre_polynomials_match_assoc() {
        let p = legendre_polynomials(15, -0.42);
        for (l, v) in p.iter().enumerate() {
            assert!((v - assoc_legendre(l, 0, -0.42).unwrap()).abs() < 1e-14);
        }
    }
}
