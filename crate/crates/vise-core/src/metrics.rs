//! Efficiency criteria computed from game traces, and their aggregation
//! across replicates.

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::voting::{ModeConfig, Strategy};

/// Aggregates of one game.
///
/// `applied_increment_total` sums, over played steps, the total increment
/// received by the agents alive at that step (zero on rejected steps).
/// `alive_agent_steps` counts one per alive agent per played step, so
/// rejected proposals contribute their zero increments to the average while
/// eliminated agents stop counting from their elimination onward.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GameResult {
    pub applied_increment_total: f64,
    pub alive_agent_steps: u64,
    pub survivors: usize,
    pub accepted_steps: u32,
    pub played_steps: u32,
}

impl GameResult {
    /// Average one-step capital increment per alive agent.
    pub fn aci(&self) -> Result<f64> {
        if self.alive_agent_steps == 0 {
            return Err(Error::UndefinedMetric(
                "average increment is undefined for a game with no agent-steps",
            ));
        }
        Ok(self.applied_increment_total / self.alive_agent_steps as f64)
    }

    /// Fraction of the original `agents` still solvent at game end.
    pub fn survival_rate(&self, agents: usize) -> f64 {
        assert!(agents >= 1, "society needs at least one agent");
        self.survivors as f64 / agents as f64
    }

    /// Fraction of played steps whose proposal was accepted; zero for a game
    /// that never played a step.
    pub fn accept_share(&self) -> f64 {
        if self.played_steps == 0 {
            0.0
        } else {
            self.accepted_steps as f64 / self.played_steps as f64
        }
    }
}

/// Replicate-level statistics of one sweep cell. The standard errors are
/// missing when only a single replicate was run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aggregate {
    pub aci_mean: f64,
    pub aci_stderr: Option<f64>,
    pub survival_mean: f64,
    pub survival_stderr: Option<f64>,
    pub accept_share_mean: f64,
}

/// One aggregated experiment cell: the full configuration echo plus the
/// replicate statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub dist: DistributionSpec,
    pub agents: usize,
    pub mode: ModeConfig,
    pub strategy: Strategy,
    pub replicates: usize,
    pub base_seed: u64,
    pub stats: Aggregate,
}

/// Mean and standard error (sample standard deviation over sqrt of the
/// count); the standard error is `None` for fewer than two values.
fn mean_stderr(values: &[f64]) -> (f64, Option<f64>) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, None);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, Some((var / n).sqrt()))
}

/// Averages per-game criteria across replicates. Per-game values are formed
/// first and then averaged, so each game weighs equally regardless of how
/// early it went extinct.
pub fn aggregate(results: &[GameResult], agents: usize) -> Result<Aggregate> {
    if results.is_empty() {
        return Err(Error::InvalidConfig(
            "aggregation needs at least one game".into(),
        ));
    }
    let acis = results.iter().map(GameResult::aci).collect::<Result<Vec<_>>>()?;
    let survivals: Vec<f64> = results.iter().map(|r| r.survival_rate(agents)).collect();
    let accept_shares: Vec<f64> = results.iter().map(GameResult::accept_share).collect();

    let (aci_mean, aci_stderr) = mean_stderr(&acis);
    let (survival_mean, survival_stderr) = mean_stderr(&survivals);
    let (accept_share_mean, _) = mean_stderr(&accept_shares);
    Ok(Aggregate {
        aci_mean,
        aci_stderr,
        survival_mean,
        survival_stderr,
        accept_share_mean,
    })
}
