use serde::Serialize;

use crate::context::FrequencyContext;
use crate::specfun::bound_fn;
use crate::{Error, Result};

/// Upper bound `α · e^{−β(L) L}` on the operator-norm error of the
/// degree-`L` truncation, valid for `L ≥ L_B = ⌈ka⌉`.
///
/// `α = ωμ₀√π a / (2√(k Z₀))`, `β(L) = −ln f(ka / (L + ½))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorBound {
    alpha: f64,
    ka: f64,
    l_b: usize,
}

pub fn error_bound(ctx: &FrequencyContext) -> Result<ErrorBound> {
    let a = ctx.radius();
    if a <= 0.0 {
        return Err(Error::domain(format!("enclosing radius must be positive, got {a}")));
    }
    let k = ctx.wavenumber();
    let alpha = ctx.omega() * ctx.mu0() * std::f64::consts::PI.sqrt() * a / (2.0 * (k * ctx.impedance()).sqrt());
    Ok(ErrorBound {
        alpha,
        ka: ctx.ka(),
        l_b: ctx.effective_bandwidth(),
    })
}

impl ErrorBound {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn ka(&self) -> f64 {
        self.ka
    }

    pub fn l_b(&self) -> usize {
        self.l_b
    }

    /// `β(L)`; defined whenever `ka ≤ L + ½`.
    pub fn beta(&self, l: usize) -> Result<f64> {
        Ok(-bound_fn(self.ka / (l as f64 + 0.5))?.ln())
    }

    pub fn evaluate(&self, l: usize) -> Result<f64> {
        if l < self.l_b {
            return Err(Error::domain(format!(
                "bound holds for L ≥ {} only, got L = {l}",
                self.l_b
            )));
        }
        Ok(self.alpha * (-self.beta(l)? * l as f64).exp())
    }
}
