//! One complete game: society state, proposal voting, capital update, and
//! bankruptcy elimination.
//!
//! A step runs in this order: eliminate agents who went bankrupt on the
//! previous step (extinction mode only), draw one increment per surviving
//! agent, vote, and apply the increments if the proposal carries a strict
//! majority. Eliminated agents keep their array slot (`alive = false`) so
//! original ids stay stable for tie-breaking and reporting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::metrics::GameResult;

/// Per-agent capitals and alive flags at a time step. Indexed by original
/// agent id `0..n-1`; eliminated agents keep their slot.
#[derive(Debug, Clone, PartialEq)]
pub struct SocietyState {
    capitals: Vec<f64>,
    alive: Vec<bool>,
    step: u32,
}

impl SocietyState {
    pub fn new(agents: usize, initial_capital: f64) -> Self {
        Self {
            capitals: vec![initial_capital; agents],
            alive: vec![true; agents],
            step: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.capitals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.capitals.is_empty()
    }

    pub fn capitals(&self) -> &[f64] {
        &self.capitals
    }

    pub fn alive(&self) -> &[bool] {
        &self.alive
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    /// Steps completed so far.
    pub fn step(&self) -> u32 {
        self.step
    }
}

/// A proposed vector of capital increments, one entry per currently alive
/// agent, in original-id order.
#[derive(Debug, Clone, PartialEq)]
pub struct Proposal {
    increments: Vec<f64>,
}

impl Proposal {
    pub fn new(increments: Vec<f64>) -> Self {
        Self { increments }
    }

    pub fn increments(&self) -> &[f64] {
        &self.increments
    }

    pub fn len(&self) -> usize {
        self.increments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.increments.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.increments.iter().sum()
    }
}

/// Voting strategy shared by every agent of a homogeneous society.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    /// Votes yes iff the agent's own increment is strictly positive.
    Egoist,
    /// Votes yes iff the summed increments of the poorest
    /// `window_fraction` of the current society are strictly positive.
    Altruist { window_fraction: f64 },
}

impl Strategy {
    pub fn altruist(window_fraction: f64) -> Result<Self> {
        if !(window_fraction > 0.0 && window_fraction <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "support window fraction must lie in (0, 1], got {window_fraction}"
            )));
        }
        Ok(Strategy::Altruist { window_fraction })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Strategy::Egoist => "egoist",
            Strategy::Altruist { .. } => "altruist",
        }
    }

    pub fn window_fraction(&self) -> Option<f64> {
        match self {
            Strategy::Egoist => None,
            Strategy::Altruist { window_fraction } => Some(*window_fraction),
        }
    }
}

/// Whether bankrupt agents are eliminated or stay active.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Extinction,
    NoExtinction,
}

impl Mode {
    pub fn label(&self) -> &'static str {
        match self {
            Mode::Extinction => "extinct",
            Mode::NoExtinction => "noextinct",
        }
    }
}

/// Game mode plus the shared initial capital and planned game length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeConfig {
    mode: Mode,
    initial_capital: f64,
    max_steps: u32,
}

impl ModeConfig {
    pub fn new(mode: Mode, initial_capital: f64, max_steps: u32) -> Result<Self> {
        if max_steps == 0 {
            return Err(Error::InvalidParameter(
                "game length must be at least 1 step".into(),
            ));
        }
        if !initial_capital.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "initial capital must be finite, got {initial_capital}"
            )));
        }
        if mode == Mode::Extinction && initial_capital < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "extinction mode requires a nonnegative initial capital, got {initial_capital}"
            )));
        }
        Ok(Self {
            mode,
            initial_capital,
            max_steps,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn initial_capital(&self) -> f64 {
        self.initial_capital
    }

    pub fn max_steps(&self) -> u32 {
        self.max_steps
    }
}

/// Number of supported agents for an altruist window applied to the current
/// alive count: round-half-up of `window_fraction * alive_count`, floored at
/// one agent and capped at the alive count.
pub fn support_count(alive_count: usize, window_fraction: f64) -> usize {
    let rounded = (window_fraction * alive_count as f64 + 0.5).floor() as usize;
    rounded.clamp(1, alive_count)
}

/// Ids of the `count` alive agents with the smallest capitals; ties broken
/// by smaller original id. Returned in ascending id order.
///
/// # Panics
/// If `count` exceeds the number of alive agents.
pub fn poorest_agents(state: &SocietyState, count: usize) -> Vec<usize> {
    let mut ranked: Vec<usize> = (0..state.len()).filter(|&i| state.alive[i]).collect();
    assert!(
        count <= ranked.len(),
        "requested {count} poorest agents of {} alive",
        ranked.len()
    );
    ranked.sort_unstable_by(|&a, &b| {
        state.capitals[a]
            .total_cmp(&state.capitals[b])
            .then(a.cmp(&b))
    });
    let mut ids = ranked[..count].to_vec();
    ids.sort_unstable();
    ids
}

/// Yes-vote count for a proposal under the society's common strategy.
/// Altruists vote unanimously, so their yes count is 0 or the alive count.
///
/// # Panics
/// If the proposal length differs from the alive count.
pub fn cast_votes(state: &SocietyState, proposal: &Proposal, strategy: Strategy) -> usize {
    let alive_count = state.alive_count();
    assert_eq!(
        proposal.len(),
        alive_count,
        "proposal has {} increments for {} alive agents",
        proposal.len(),
        alive_count
    );
    match strategy {
        Strategy::Egoist => proposal.increments().iter().filter(|&&d| d > 0.0).count(),
        Strategy::Altruist { window_fraction } => {
            let supported = support_count(alive_count, window_fraction);
            // Map original ids to positions in the alive-ordered proposal.
            let mut position = vec![usize::MAX; state.len()];
            let mut next = 0;
            for (id, &alive) in state.alive.iter().enumerate() {
                if alive {
                    position[id] = next;
                    next += 1;
                }
            }
            let window_total: f64 = poorest_agents(state, supported)
                .iter()
                .map(|&id| proposal.increments()[position[id]])
                .sum();
            if window_total > 0.0 {
                alive_count
            } else {
                0
            }
        }
    }
}

/// Simple-majority tally: accept iff strictly more than half of the alive
/// agents voted yes. Even splits reject.
pub fn tally(yes: usize, alive_count: usize) -> bool {
    2 * yes > alive_count
}

/// Applies an accepted proposal to the alive agents (or nothing on a
/// rejection) and advances the step counter.
pub fn apply_step(state: &mut SocietyState, proposal: &Proposal, accept: bool) {
    if accept {
        let mut inc = proposal.increments().iter();
        for (id, &alive) in state.alive.iter().enumerate() {
            if alive {
                state.capitals[id] += inc.next().expect("proposal aligned with alive agents");
            }
        }
    }
    state.step += 1;
}

/// Marks every alive agent with strictly negative capital as dead; zero
/// capital survives. Returns the number eliminated. Capital slots are kept
/// for reporting.
pub fn eliminate_bankrupts(state: &mut SocietyState) -> usize {
    let mut eliminated = 0;
    for (id, alive) in state.alive.iter_mut().enumerate() {
        if *alive && state.capitals[id] < 0.0 {
            *alive = false;
            eliminated += 1;
        }
    }
    eliminated
}

/// One row of the per-step trace emitted by [`run_game_with`]. Capitals are
/// reported after the step's outcome is applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub step: u32,
    pub alive_count: usize,
    pub accepted: bool,
    /// Sum of the proposed increments, whether or not they were applied.
    pub total_increment: f64,
    pub min_capital: f64,
    pub max_capital: f64,
}

/// Runs one complete game and reports its aggregates. Deterministic in all
/// parameters plus `seed`. The observer sees each played step's record and
/// the proposed increments, in order.
pub fn run_game_with<F>(
    dist: &DistributionSpec,
    strategy: Strategy,
    mode: &ModeConfig,
    agents: usize,
    seed: u64,
    mut observer: F,
) -> Result<GameResult>
where
    F: FnMut(&StepRecord, &[f64]),
{
    if agents == 0 {
        return Err(Error::InvalidConfig("society needs at least one agent".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = SocietyState::new(agents, mode.initial_capital());
    let mut increments = vec![0.0; agents];

    let mut result = GameResult::default();
    for step in 1..=mode.max_steps() {
        if mode.mode() == Mode::Extinction {
            eliminate_bankrupts(&mut state);
        }
        let alive_count = state.alive_count();
        if alive_count == 0 {
            break;
        }

        increments.resize(alive_count, 0.0);
        dist.sample_into(&mut rng, &mut increments);
        let proposal = Proposal::new(std::mem::take(&mut increments));

        let yes = cast_votes(&state, &proposal, strategy);
        let accept = tally(yes, alive_count);
        let total = proposal.total();
        apply_step(&mut state, &proposal, accept);

        result.alive_agent_steps += alive_count as u64;
        result.played_steps += 1;
        if accept {
            result.applied_increment_total += total;
            result.accepted_steps += 1;
        }

        let (mut min_capital, mut max_capital) = (f64::INFINITY, f64::NEG_INFINITY);
        for (id, &alive) in state.alive().iter().enumerate() {
            if alive {
                min_capital = min_capital.min(state.capitals()[id]);
                max_capital = max_capital.max(state.capitals()[id]);
            }
        }
        observer(
            &StepRecord {
                step,
                alive_count,
                accepted: accept,
                total_increment: total,
                min_capital,
                max_capital,
            },
            proposal.increments(),
        );

        increments = proposal.increments;
    }

    // Agents whose capital went negative on the final step went bankrupt
    // during the game even though no later step eliminated them.
    result.survivors = match mode.mode() {
        Mode::NoExtinction => agents,
        Mode::Extinction => state
            .alive()
            .iter()
            .zip(state.capitals())
            .filter(|&(&alive, &capital)| alive && capital >= 0.0)
            .count(),
    };
    Ok(result)
}

/// [`run_game_with`] without step observation.
pub fn run_game(
    dist: &DistributionSpec,
    strategy: Strategy,
    mode: &ModeConfig,
    agents: usize,
    seed: u64,
) -> Result<GameResult> {
    run_game_with(dist, strategy, mode, agents, seed, |_, _| {})
}
