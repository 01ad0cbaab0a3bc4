//! Simulation engine for societies voting on stochastically generated
//! proposals: proposal-increment distributions, the per-step voting and
//! capital dynamics, efficiency metrics, and deterministic parallel sweeps.

pub mod distributions;
pub mod error;
pub mod experiment;
pub mod metrics;
pub mod voting;

pub use distributions::{DistributionSpec, Family};
pub use error::{Error, Result};
pub use experiment::{derive_seed, run_sweep, ExperimentConfig};
pub use metrics::{aggregate, Aggregate, GameResult, SweepRow};
pub use voting::{
    run_game, run_game_with, Mode, ModeConfig, Proposal, SocietyState, StepRecord, Strategy,
};
