//! Proposal-increment distributions.
//!
//! Every family is parameterized by the mean and standard deviation of the
//! generated increments, so societies facing different environments can be
//! compared at a fixed `(mean, std_dev)`. The symmetrized Pareto family
//! additionally carries a tail index; its scale is derived, never stored.

pub mod laplace;
pub mod normal;
pub mod student_t;
pub mod sym_pareto;

use rand::Rng;
use rand_distr::{Distribution, Open01, StandardNormal, StudentT};

use crate::error::{Error, Result};

/// Smallest accepted margin of the symmetrized-Pareto tail index above 2.
/// The closed forms degenerate at 2 (no variance), so values at or below
/// `2 + MIN_TAIL_MARGIN` are rejected rather than clamped.
pub const MIN_TAIL_MARGIN: f64 = 1e-6;

/// Distribution family of the proposal increments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Normal,
    SymmetrizedPareto { tail_index: f64 },
    StudentT3,
    Laplace,
}

impl Family {
    /// Short stable name used in CSV output and config files.
    pub fn label(&self) -> &'static str {
        match self {
            Family::Normal => "normal",
            Family::SymmetrizedPareto { .. } => "sp",
            Family::StudentT3 => "t3",
            Family::Laplace => "laplace",
        }
    }

    pub fn tail_index(&self) -> Option<f64> {
        match self {
            Family::SymmetrizedPareto { tail_index } => Some(*tail_index),
            _ => None,
        }
    }
}

/// A validated proposal-increment distribution: increments are i.i.d. with
/// mean `mean` and standard deviation `std_dev`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionSpec {
    family: Family,
    mean: f64,
    std_dev: f64,
}

impl DistributionSpec {
    pub fn new(family: Family, mean: f64, std_dev: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mean must be finite, got {mean}"
            )));
        }
        if !(std_dev > 0.0) || !std_dev.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "std_dev must be positive and finite, got {std_dev}"
            )));
        }
        if let Family::SymmetrizedPareto { tail_index } = family {
            // Validates the tail index; the scale itself is recomputed on use.
            sym_pareto::scale(tail_index, std_dev)?;
        }
        Ok(Self {
            family,
            mean,
            std_dev,
        })
    }

    pub fn normal(mean: f64, std_dev: f64) -> Result<Self> {
        Self::new(Family::Normal, mean, std_dev)
    }

    pub fn symmetrized_pareto(tail_index: f64, mean: f64, std_dev: f64) -> Result<Self> {
        Self::new(Family::SymmetrizedPareto { tail_index }, mean, std_dev)
    }

    pub fn student_t3(mean: f64, std_dev: f64) -> Result<Self> {
        Self::new(Family::StudentT3, mean, std_dev)
    }

    pub fn laplace(mean: f64, std_dev: f64) -> Result<Self> {
        Self::new(Family::Laplace, mean, std_dev)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn std_dev(&self) -> f64 {
        self.std_dev
    }

    /// Cumulative distribution function.
    pub fn cdf(&self, x: f64) -> f64 {
        match self.family {
            Family::Normal => normal::cdf(x, self.mean, self.std_dev),
            Family::SymmetrizedPareto { tail_index } => {
                sym_pareto::cdf(x, tail_index, self.mean, self.std_dev)
            }
            Family::StudentT3 => student_t::cdf(x, self.mean, self.std_dev),
            Family::Laplace => laplace::cdf(x, self.mean, self.std_dev),
        }
    }

    /// Probability that the increment deviates from the mean by at least
    /// `z` standard deviations (two-sided). Dimensionless in `z`, so it does
    /// not depend on `mean` or `std_dev`.
    pub fn tail_heaviness(&self, z: f64) -> Result<f64> {
        check_z(z)?;
        Ok(match self.family {
            Family::Normal => normal::tail_heaviness(z),
            Family::SymmetrizedPareto { tail_index } => sym_pareto::tail_heaviness(z, tail_index),
            Family::StudentT3 => student_t::tail_heaviness(z),
            Family::Laplace => laplace::tail_heaviness(z),
        })
    }

    /// Natural log of [`Self::tail_heaviness`], evaluated directly in log
    /// space so extreme `z` (where the linear value underflows) stays finite.
    pub fn log_tail_heaviness(&self, z: f64) -> Result<f64> {
        check_z(z)?;
        Ok(match self.family {
            Family::Normal => normal::log_tail_heaviness(z),
            Family::SymmetrizedPareto { tail_index } => {
                sym_pareto::log_tail_heaviness(z, tail_index)
            }
            Family::StudentT3 => student_t::log_tail_heaviness(z),
            Family::Laplace => laplace::log_tail_heaviness(z),
        })
    }

    /// Fills `out` with i.i.d. draws. Consumes the generator deterministically:
    /// the same starting state always produces the same values.
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        match self.family {
            Family::Normal => {
                for slot in out {
                    let z: f64 = StandardNormal.sample(rng);
                    *slot = self.mean + self.std_dev * z;
                }
            }
            Family::SymmetrizedPareto { tail_index } => {
                let scale = sym_pareto::scale(tail_index, self.std_dev)
                    .expect("validated at construction");
                for slot in out {
                    // Open01 excludes both endpoints; the quantile diverges there.
                    let u: f64 = Open01.sample(rng);
                    *slot = sym_pareto::quantile_with_scale(u, tail_index, self.mean, scale);
                }
            }
            Family::StudentT3 => {
                let t3 = StudentT::new(3.0).expect("3 degrees of freedom is valid");
                let scale = self.std_dev / 3f64.sqrt();
                for slot in out {
                    *slot = self.mean + scale * t3.sample(rng);
                }
            }
            Family::Laplace => {
                for slot in out {
                    let u: f64 = Open01.sample(rng);
                    *slot = laplace::quantile(u, self.mean, self.std_dev);
                }
            }
        }
    }

    /// Returns `n` i.i.d. draws as a fresh vector.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n];
        self.sample_into(rng, &mut out);
        out
    }
}

fn check_z(z: f64) -> Result<()> {
    if z < 0.0 || z.is_nan() {
        return Err(Error::InvalidParameter(format!(
            "tail argument must be >= 0, got {z}"
        )));
    }
    Ok(())
}
