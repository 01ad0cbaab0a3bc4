//! Symmetrized Pareto distribution.
//!
//! A Pareto density reflected about its infimum and recentered so the mode
//! sits at `mean`:
//!
//! ```text
//! f(x) = k/(2a) * (|x - mean|/a + 1)^-(k+1)
//! ```
//!
//! For tail index `k > 2` the variance exists and equals `std_dev^2` exactly
//! when the scale is `a = std_dev * sqrt((k-1)(k-2)/2)`.

use crate::error::{Error, Result};

use super::MIN_TAIL_MARGIN;

/// Scale `a` giving variance `std_dev^2` for tail index `tail_index`.
pub fn scale(tail_index: f64, std_dev: f64) -> Result<f64> {
    if !(tail_index > 2.0 + MIN_TAIL_MARGIN) {
        return Err(Error::InvalidParameter(format!(
            "symmetrized Pareto tail index must exceed 2 (variance exists only there), got {tail_index}"
        )));
    }
    if !(std_dev > 0.0) || !std_dev.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "std_dev must be positive and finite, got {std_dev}"
        )));
    }
    Ok(std_dev * ((tail_index - 1.0) * (tail_index - 2.0) / 2.0).sqrt())
}

/// `sqrt(2 / ((k-1)(k-2)))`, the reciprocal scale in std-dev units.
fn inv_scale_units(tail_index: f64) -> f64 {
    (2.0 / ((tail_index - 1.0) * (tail_index - 2.0))).sqrt()
}

/// Density at `x`.
pub fn pdf(x: f64, tail_index: f64, mean: f64, std_dev: f64) -> Result<f64> {
    let a = scale(tail_index, std_dev)?;
    Ok(tail_index / (2.0 * a) * ((x - mean).abs() / a + 1.0).powf(-(tail_index + 1.0)))
}

/// Cumulative distribution function (two-branch closed form).
pub fn cdf(x: f64, tail_index: f64, mean: f64, std_dev: f64) -> f64 {
    let c = inv_scale_units(tail_index);
    let d = (x - mean) / std_dev;
    if x <= mean {
        0.5 * (1.0 - d * c).powf(-tail_index)
    } else {
        1.0 - 0.5 * (1.0 + d * c).powf(-tail_index)
    }
}

/// Quantile (inverse of [`cdf`]) for `u` in the open interval (0, 1).
pub fn quantile(u: f64, tail_index: f64, mean: f64, std_dev: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "quantile argument must lie in (0, 1), got {u}"
        )));
    }
    let a = scale(tail_index, std_dev)?;
    Ok(quantile_with_scale(u, tail_index, mean, a))
}

/// Quantile with a precomputed scale; `u` must already be in (0, 1).
pub(super) fn quantile_with_scale(u: f64, tail_index: f64, mean: f64, a: f64) -> f64 {
    if u <= 0.5 {
        mean - a * ((2.0 * u).powf(-1.0 / tail_index) - 1.0)
    } else {
        mean + a * ((2.0 * (1.0 - u)).powf(-1.0 / tail_index) - 1.0)
    }
}

/// Two-sided tail mass beyond `z` standard deviations:
/// `w(z) = (1 + z*sqrt(2/((k-1)(k-2))))^-k`.
pub fn tail_heaviness(z: f64, tail_index: f64) -> f64 {
    (1.0 + z * inv_scale_units(tail_index)).powf(-tail_index)
}

/// `ln w(z)` evaluated without forming `w` itself, so arguments far beyond
/// the linear-space underflow point remain usable.
pub fn log_tail_heaviness(z: f64, tail_index: f64) -> f64 {
    -tail_index * (z * inv_scale_units(tail_index)).ln_1p()
}
