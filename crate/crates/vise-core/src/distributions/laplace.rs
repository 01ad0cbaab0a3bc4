//! Laplace distribution with mean `mean` and standard deviation `std_dev`
//! (diversity `std_dev/sqrt(2)`). Limit of the symmetrized Pareto family as
//! the tail index grows without bound.

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Cumulative distribution function (two-branch exponential form).
pub fn cdf(x: f64, mean: f64, std_dev: f64) -> f64 {
    let d = (x - mean) * SQRT_2 / std_dev;
    if x <= mean {
        0.5 * d.exp()
    } else {
        1.0 - 0.5 * (-d).exp()
    }
}

/// Quantile for `u` in (0, 1); callers guarantee the open interval.
pub fn quantile(u: f64, mean: f64, std_dev: f64) -> f64 {
    let b = std_dev / SQRT_2;
    if u <= 0.5 {
        mean + b * (2.0 * u).ln()
    } else {
        mean - b * (2.0 * (1.0 - u)).ln()
    }
}

/// Two-sided tail mass beyond `z` standard deviations: `exp(-z*sqrt(2))`.
pub fn tail_heaviness(z: f64) -> f64 {
    (-z * SQRT_2).exp()
}

pub fn log_tail_heaviness(z: f64) -> f64 {
    -z * SQRT_2
}
