//! Deterministic, parallel orchestration of sweep grids.
//!
//! Every (cell, replicate) task owns its own generator, seeded by a
//! stateless mix of the base seed, a content key of the cell's parameters,
//! and the replicate index. Seeding by content rather than position keeps
//! cells independent: adding or removing grid points never changes another
//! cell's stream, and no stream is ever reused across distinct cells.

use rayon::prelude::*;

use crate::distributions::{DistributionSpec, Family};
use crate::error::{Error, Result};
use crate::metrics::{aggregate, GameResult, SweepRow};
use crate::voting::{run_game, ModeConfig, Strategy};

/// SplitMix64 finalizer: a bijective avalanche mix on 64 bits.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives the generator seed for one (cell, replicate) task. A stateless
/// avalanche mix: fixed inputs give the same output on every platform, and
/// for a fixed `(base_seed, cell_index)` the map over `replicate_index` is
/// a bijection, so replicate streams never collide.
pub fn derive_seed(base_seed: u64, cell_index: u64, replicate_index: u64) -> u64 {
    let mut h = mix64(base_seed ^ 0x9e37_79b9_7f4a_7c15);
    h = mix64(h ^ cell_index);
    mix64(h ^ replicate_index)
}

/// Sweep grid: the cross product of distribution templates, the mean grid,
/// and the strategy set, each cell run `replicates` times.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Families (with tail index where applicable) whose mean is swept.
    pub families: Vec<Family>,
    pub mean_grid: Vec<f64>,
    pub std_dev: f64,
    pub agents: usize,
    pub mode: ModeConfig,
    pub replicates: usize,
    pub strategies: Vec<Strategy>,
    pub base_seed: u64,
    /// Share one proposal stream across strategies within a
    /// (family, mean) pair, for variance-reduced strategy comparisons.
    pub common_random_numbers: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.families.is_empty() {
            return Err(Error::InvalidConfig("no distribution families given".into()));
        }
        if self.mean_grid.is_empty() {
            return Err(Error::InvalidConfig("the mean grid is empty".into()));
        }
        if self.strategies.is_empty() {
            return Err(Error::InvalidConfig("no strategies given".into()));
        }
        if self.replicates == 0 {
            return Err(Error::InvalidConfig("replicates must be at least 1".into()));
        }
        if self.agents == 0 {
            return Err(Error::InvalidConfig("society needs at least one agent".into()));
        }
        // Surface distribution-domain errors before any work is spawned.
        for &family in &self.families {
            for &mean in &self.mean_grid {
                DistributionSpec::new(family, mean, self.std_dev)
                    .map_err(|e| self.cell_error(family, mean, None, e))?;
            }
        }
        Ok(())
    }

    fn cell_error(&self, family: Family, mean: f64, strategy: Option<Strategy>, e: Error) -> Error {
        let cell = match strategy {
            Some(s) => format!("family={} mean={} strategy={}", family.label(), mean, s.label()),
            None => format!("family={} mean={}", family.label(), mean),
        };
        Error::SweepCell {
            cell,
            source: Box::new(e),
        }
    }
}

/// One cell of the sweep grid, in deterministic output order.
#[derive(Debug, Clone, Copy)]
struct Cell {
    dist: DistributionSpec,
    strategy: Strategy,
}

/// Content key of a cell: a mix over every parameter that shapes the game.
/// Under common random numbers the strategy is left out, so all strategies
/// of a (family, mean) pair share proposal streams.
fn cell_key(config: &ExperimentConfig, cell: &Cell) -> u64 {
    let mut h = mix64(0x7669_7365_2063_656c); // arbitrary domain tag
    let mut absorb = |v: u64| h = mix64(h ^ v);
    let (family_tag, tail_bits) = match cell.dist.family() {
        Family::Normal => (1u64, 0u64),
        Family::SymmetrizedPareto { tail_index } => (2, tail_index.to_bits()),
        Family::StudentT3 => (3, 0),
        Family::Laplace => (4, 0),
    };
    absorb(family_tag);
    absorb(tail_bits);
    absorb(cell.dist.mean().to_bits());
    absorb(cell.dist.std_dev().to_bits());
    absorb(config.agents as u64);
    absorb(cell.mode_bits(config));
    if !config.common_random_numbers {
        match cell.strategy {
            Strategy::Egoist => absorb(1),
            Strategy::Altruist { window_fraction } => {
                absorb(2);
                absorb(window_fraction.to_bits());
            }
        }
    }
    h
}

impl Cell {
    fn mode_bits(&self, config: &ExperimentConfig) -> u64 {
        let mode_tag = match config.mode.mode() {
            crate::voting::Mode::Extinction => 1u64,
            crate::voting::Mode::NoExtinction => 2,
        };
        mix64(mode_tag ^ config.mode.initial_capital().to_bits())
            ^ u64::from(config.mode.max_steps())
    }
}

fn cells_of(config: &ExperimentConfig) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    for &family in &config.families {
        for &mean in &config.mean_grid {
            let dist = DistributionSpec::new(family, mean, config.std_dev)?;
            for &strategy in &config.strategies {
                cells.push(Cell { dist, strategy });
            }
        }
    }
    Ok(cells)
}

/// Runs the whole grid and aggregates each cell across its replicates.
///
/// Row order is the deterministic cell order (families x mean grid x
/// strategies, as configured) and the output is bitwise identical for a
/// given `(config, base_seed)` regardless of `workers`. `workers = 0` uses
/// the global thread pool.
pub fn run_sweep(config: &ExperimentConfig, workers: usize) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let cells = cells_of(config)?;

    let tasks: Vec<(usize, u64)> = (0..cells.len())
        .flat_map(|c| (0..config.replicates as u64).map(move |r| (c, r)))
        .collect();

    let run_all = || -> Result<Vec<GameResult>> {
        tasks
            .par_iter()
            .map(|&(cell_idx, replicate)| {
                let cell = &cells[cell_idx];
                let seed = derive_seed(config.base_seed, cell_key(config, cell), replicate);
                run_game(&cell.dist, cell.strategy, &config.mode, config.agents, seed).map_err(
                    |e| {
                        config.cell_error(
                            cell.dist.family(),
                            cell.dist.mean(),
                            Some(cell.strategy),
                            e,
                        )
                    },
                )
            })
            .collect()
    };

    let results = if workers == 0 {
        run_all()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("cannot build worker pool: {e}")))?;
        pool.install(run_all)?
    };

    let mut rows = Vec::with_capacity(cells.len());
    for (cell_idx, cell) in cells.iter().enumerate() {
        let start = cell_idx * config.replicates;
        let games = &results[start..start + config.replicates];
        let stats = aggregate(games, config.agents).map_err(|e| {
            config.cell_error(cell.dist.family(), cell.dist.mean(), Some(cell.strategy), e)
        })?;
        rows.push(SweepRow {
            dist: cell.dist,
            agents: config.agents,
            mode: config.mode,
            strategy: cell.strategy,
            replicates: config.replicates,
            base_seed: config.base_seed,
            stats,
        });
    }
    Ok(rows)
}
