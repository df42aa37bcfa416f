//! Analysis frequency, free-space constants and the enclosing ball.

use std::f64::consts::PI;

use crate::{Error, Result};

/// Vacuum permeability μ₀ in H/m.
pub const MU0: f64 = 4.0e-7 * PI;
/// Vacuum permittivity ε₀ in F/m (CODATA 2018).
pub const EPS0: f64 = 8.854_187_812_8e-12;

/// Speed of light implied by [`MU0`] and [`EPS0`].
pub fn speed_of_light() -> f64 {
    1.0 / (MU0 * EPS0).sqrt()
}

/// A fixed analysis frequency in free space together with the radius `a` of
/// a ball centred at the origin that contains the radiating structure.
///
/// All derived quantities are computed once at construction and stored, so
/// downstream bounds see bit-identical inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyContext {
    f: f64,
    mu0: f64,
    eps0: f64,
    omega: f64,
    k: f64,
    z0: f64,
    a: f64,
    ka: f64,
}

impl FrequencyContext {
    /// Builds the context for frequency `f` (Hz) and enclosing radius `a` (m).
    pub fn new(f: f64, a: f64) -> Result<Self> {
        if !(f.is_finite() && f > 0.0) {
            return Err(Error::domain(format!("frequency must be positive, got {f}")));
        }
        check_radius(a)?;
        let omega = 2.0 * PI * f;
        let k = omega * (MU0 * EPS0).sqrt();
        Ok(Self::assemble(f, omega, k, a))
    }

    /// Builds the context from a wavenumber `k` (rad/m) instead of a
    /// frequency. `k` is stored verbatim, which makes `ka` exact for
    /// hand-picked electrical sizes.
    pub fn with_wavenumber(k: f64, a: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::domain(format!("wavenumber must be positive, got {k}")));
        }
        check_radius(a)?;
        let f = k / (2.0 * PI * (MU0 * EPS0).sqrt());
        let omega = 2.0 * PI * f;
        Ok(Self::assemble(f, omega, k, a))
    }

    fn assemble(f: f64, omega: f64, k: f64, a: f64) -> Self {
        Self {
            f,
            mu0: MU0,
            eps0: EPS0,
            omega,
            k,
            z0: (MU0 / EPS0).sqrt(),
            a,
            ka: k * a,
        }
    }

    /// Same frequency, different enclosing radius.
    pub fn with_radius(&self, a: f64) -> Result<Self> {
        check_radius(a)?;
        Ok(Self {
            a,
            ka: self.k * a,
            ..*self
        })
    }

    pub fn frequency(&self) -> f64 {
        self.f
    }

    pub fn mu0(&self) -> f64 {
        self.mu0
    }

    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn wavenumber(&self) -> f64 {
        self.k
    }

    /// Free-space impedance Z₀ in Ω.
    pub fn impedance(&self) -> f64 {
        self.z0
    }

    pub fn radius(&self) -> f64 {
        self.a
    }

    /// Electrical size `k·a`.
    pub fn ka(&self) -> f64 {
        self.ka
    }

    /// Effective bandwidth `L_B = ⌈ka⌉`.
    pub fn effective_bandwidth(&self) -> usize {
        effective_bandwidth(self.ka)
    }

    /// Magnitude of the far-field prefactor `ωμ₀ / √Z₀`.
    pub(crate) fn spectrum_scale(&self) -> f64 {
        self.omega * self.mu0 / self.z0.sqrt()
    }
}

fn check_radius(a: f64) -> Result<()> {
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::domain(format!("radius must be non-negative, got {a}")));
    }
    Ok(())
}

/// `⌈ka⌉` for a non-negative electrical size.
pub fn effective_bandwidth(ka: f64) -> usize {
    ka.max(0.0).ceil() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_wavenumber() {
        let ctx = FrequencyContext::new(speed_of_light() / (2.0 * PI), 1.0).unwrap();
        assert!((ctx.wavenumber() - 1.0).abs() < 1e-15);
        assert!((ctx.ka() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_ball() {
        let ctx = FrequencyContext::new(1e9, 0.0).unwrap();
        assert_eq!(ctx.ka(), 0.0);
        assert_eq!(ctx.effective_bandwidth(), 0);
    }

    #[test]
    fn three_gigahertz() {
        let ctx = FrequencyContext::new(3e9, 0.1).unwrap();
        let k = 2.0 * PI * 3e9 / 299_792_458.0;
        assert!((ctx.wavenumber() - k).abs() / k < 1e-9);
        assert!((ctx.ka() - 0.1 * k).abs() < 1e-8);
        assert!((ctx.ka() - 6.287_535).abs() < 1e-6);
        assert_eq!(ctx.effective_bandwidth(), 7);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(FrequencyContext::new(0.0, 1.0).is_err());
        assert!(FrequencyContext::new(-1.0, 1.0).is_err());
        assert!(FrequencyContext::new(f64::NAN, 1.0).is_err());
        assert!(FrequencyContext::new(1e9, -0.1).is_err());
        assert!(FrequencyContext::with_wavenumber(0.0, 1.0).is_err());
    }

    #[test]
    fn bandwidth_is_ceiling() {
        assert_eq!(effective_bandwidth(5.0), 5);
        assert_eq!(effective_bandwidth(5.2), 6);
        assert_eq!(effective_bandwidth(0.0), 0);
        let ctx = FrequencyContext::with_wavenumber(1.0, 5.0).unwrap();
        assert_eq!(ctx.ka(), 5.0);
        assert_eq!(ctx.effective_bandwidth(), 5);
    }

    #[test]
    fn impedance_wavenumber_consistency() {
        for &f in &[1e3, 2.4e9, 7.7e12] {
            let ctx = FrequencyContext::new(f, 0.3).unwrap();
            let lhs = ctx.impedance() * ctx.wavenumber();
            let rhs = ctx.omega() * ctx.mu0();
            assert!((lhs - rhs).abs() / rhs < 1e-14);
        }
    }

    #[test]
    fn ka_is_product_of_stored_fields() {
        let ctx = FrequencyContext::new(1.234e9, 0.777).unwrap();
        assert_eq!(ctx.ka(), ctx.wavenumber() * ctx.radius());
        let ctx2 = ctx.with_radius(0.5).unwrap();
        assert_eq!(ctx2.ka(), ctx2.wavenumber() * 0.5);
    }

    #[test]
    fn bandwidth_monotone() {
        let mut last = 0;
        for i in 0..200 {
            let a = i as f64 * 0.013;
            let lb = FrequencyContext::new(2e9, a).unwrap().effective_bandwidth();
            assert!(lb >= last);
            last = lb;
        }
        let mut last = 0;
        for i in 1..200 {
            let f = i as f64 * 5e7;
            let lb = FrequencyContext::new(f, 0.2).unwrap().effective_bandwidth();
            assert!(lb >= last);
            last = lb;
        }
    }
}
