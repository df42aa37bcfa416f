//! Spherical Bessel functions of the first kind.

use crate::{Error, Result};

/// Arguments below this use the power series.
const SERIES_CUTOFF: f64 = 1e-3;
const RESCALE_ABOVE: f64 = 1e200;

/// `j_l(x)` for `l = 0..=l_max`.
///
/// Uses Miller's downward recurrence `j_{l−1} = (2l+1)/x · j_l − j_{l+1}`
/// started well above `max(l_max, x)` and normalized against the closed
/// form of `j_0` (or `j_1` near zeros of `j_0`). Tiny arguments use the
/// ascending series.
pub fn spherical_bessel_j(l_max: usize, x: f64) -> Result<Vec<f64>> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("spherical Bessel argument {x} must be finite and >= 0")));
    }
    if x == 0.0 {
        let mut out = vec![0.0; l_max + 1];
        out[0] = 1.0;
        return Ok(out);
    }
    if x < SERIES_CUTOFF {
        return Ok(series(l_max, x));
    }
    Ok(miller(l_max, x))
}

fn series(l_max: usize, x: f64) -> Vec<f64> {
    let y = 0.5 * x * x;
    let mut lead = 1.0; // x^l / (2l+1)!!
    let mut out = Vec::with_capacity(l_max + 1);
    for l in 0..=l_max {
        if l > 0 {
            lead *= x / (2 * l + 1) as f64;
        }
        // Σ_k (−y)^k / (k! (2l+3)(2l+5)…(2l+2k+1))
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..6 {
            term *= -y / (k as f64 * (2 * l + 2 * k + 1) as f64);
            sum += term;
        }
        out.push(lead * sum);
    }
    out
}

fn start_order(l_max: usize, x: f64) -> usize {
    l_max.max(x.ceil() as usize) + 30 + (8.0 * x.cbrt()).ceil() as usize
}

fn miller(l_max: usize, x: f64) -> Vec<f64> {
    let keep = l_max.max(1);
    let top = start_order(keep, x);
    let mut out = vec![0.0; keep + 1];

    let mut above = 0.0; // f_{l+1}
    let mut cur = 1e-30; // f_l
    for l in (1..=top).rev() {
        if l <= keep {
            out[l] = cur;
        }
        let below = (2 * l + 1) as f64 / x * cur - above;
        above = cur;
        cur = below;
        if cur.abs() > RESCALE_ABOVE {
            let s = 1.0 / RESCALE_ABOVE;
            cur *= s;
            above *= s;
            for v in out.iter_mut().skip(l) {
                *v *= s;
            }
        }
    }
    out[0] = cur;

    let (s, c) = x.sin_cos();
    let j0 = s / x;
    let j1 = (s / x - c) / x;
    let scale = if j0.abs() >= j1.abs() { j0 / out[0] } else { j1 / out[1] };
    for v in out.iter_mut() {
        *v *= scale;
    }
    out.truncate(l_max + 1);
    out
}
