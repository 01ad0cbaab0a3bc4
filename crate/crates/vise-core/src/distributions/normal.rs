//! Normal proposal distribution. Only the CDF and tail functions are needed;
//! sampling goes through the ziggurat in `rand_distr`.

use std::f64::consts::PI;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Cumulative distribution function via the complementary error function,
/// which keeps full relative accuracy deep in both tails.
pub fn cdf(x: f64, mean: f64, std_dev: f64) -> f64 {
    0.5 * libm::erfc(-(x - mean) / (std_dev * SQRT_2))
}

/// Two-sided tail mass beyond `z` standard deviations: `erfc(z/sqrt(2))`.
pub fn tail_heaviness(z: f64) -> f64 {
    libm::erfc(z / SQRT_2)
}

/// `ln erfc(z/sqrt(2))`. Direct evaluation until the asymptotic expansion
/// takes over; the linear value underflows near z = 53 but the log form is
/// finite for any z.
pub fn log_tail_heaviness(z: f64) -> f64 {
    let x = z / SQRT_2;
    if x < 20.0 {
        libm::erfc(x).ln()
    } else {
        ln_erfc_asymptotic(x)
    }
}

/// Asymptotic series: erfc(x) = exp(-x^2)/(x sqrt(pi)) * S(x),
/// S(x) = 1 - 1/(2x^2) + 3/(4x^4) - ... Valid for large x; terms fall below
/// f64 resolution well within the first dozen for x >= 20.
fn ln_erfc_asymptotic(x: f64) -> f64 {
    let inv2x2 = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut series = 1.0;
    for m in 1..12 {
        term *= -((2 * m - 1) as f64) * inv2x2;
        series += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    -x * x - (x * PI.sqrt()).ln() + series.ln()
}
