use crate::{Error, Result};

/// Majorant of the scaled modified Bessel function used in the truncation
/// bound: `f(x) = x·e^{√(1−x²)} / (1 + √(1−x²))` on `[0, 1]`.
///
/// `f` increases monotonically from `f(0) = 0` to `f(1) = 1`.
pub fn bound_fn(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("bound function argument {x} outside [0, 1]")));
    }
    let s = ((1.0 - x) * (1.0 + x)).sqrt();
    Ok(x * s.exp() / (1.0 + s))
}
