//! Acceptance suite: every release criterion of the simulator, each as one
//! test that prints a PASS line with the measured numbers (visible with
//! `cargo test --test acceptance -- --nocapture`). Tolerances are pinned
//! here, not tuned elsewhere.
//!
//! Statistical criteria run on fixed seeds, so each check is deterministic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vise_core::distributions::{laplace, normal, student_t, sym_pareto};
use vise_core::voting::{
    apply_step, cast_votes, eliminate_bankrupts, support_count, tally, Mode, ModeConfig, Proposal,
    SocietyState, Strategy,
};
use vise_core::{aggregate, run_game, DistributionSpec, ExperimentConfig, Family, GameResult};

const SIGMA: f64 = 80.0;
const AGENTS: usize = 201;

fn sweep_setup(
    families: Vec<Family>,
    mean_grid: Vec<f64>,
    strategies: Vec<Strategy>,
    mode: Mode,
    base_seed: u64,
) -> ExperimentConfig {
    ExperimentConfig {
        families,
        mean_grid,
        std_dev: SIGMA,
        agents: AGENTS,
        mode: ModeConfig::new(mode, 40.0, 500).unwrap(),
        replicates: 100,
        strategies,
        base_seed,
        common_random_numbers: false,
    }
}

/// 1. Pit of losses for normal egoists without extinction: the average
/// increment is decisively negative at mu = -13, decisively positive at
/// mu = 0, and indistinguishable from (near) zero at mu = -25.
#[test]
fn criterion_01_pit_of_losses_normal_egoists() {
    let config = sweep_setup(
        vec![Family::Normal],
        vec![-25.0, -13.0, 0.0],
        vec![Strategy::Egoist],
        Mode::NoExtinction,
        0xAC01,
    );
    let rows = vise_core::run_sweep(&config, 0).unwrap();
    let row = |mu: f64| rows.iter().find(|r| r.dist.mean() == mu).unwrap();

    let (deep, pit, neutral) = (row(-25.0), row(-13.0), row(0.0));
    let pit_se = pit.stats.aci_stderr.unwrap();
    let neutral_se = neutral.stats.aci_stderr.unwrap();
    let deep_se = deep.stats.aci_stderr.unwrap();

    assert!(
        pit.stats.aci_mean <= -3.0 * pit_se,
        "aci(-13) = {} +- {pit_se}",
        pit.stats.aci_mean
    );
    assert!(
        neutral.stats.aci_mean >= 3.0 * neutral_se,
        "aci(0) = {} +- {neutral_se}",
        neutral.stats.aci_mean
    );
    assert!(
        deep.stats.aci_mean >= -0.05 - 3.0 * deep_se,
        "aci(-25) = {} +- {deep_se}",
        deep.stats.aci_mean
    );
    println!(
        "criterion 1 (pit of losses, normal egoists): PASS \
         [aci(-13)={:.4}+-{:.4}, aci(0)={:.4}+-{:.4}, aci(-25)={:.4}+-{:.4}]",
        pit.stats.aci_mean, pit_se, neutral.stats.aci_mean, neutral_se, deep.stats.aci_mean, deep_se
    );
}

/// 2. No pit of losses for egoists under the symmetrized Pareto
/// environment with tail index 20: across mu in {-20..0} the average
/// increment never dips meaningfully below zero.
#[test]
fn criterion_02_no_pit_for_sp_egoists() {
    let config = sweep_setup(
        vec![Family::SymmetrizedPareto { tail_index: 20.0 }],
        (-20..=0).map(f64::from).collect(),
        vec![Strategy::Egoist],
        Mode::NoExtinction,
        0xAC02,
    );
    let rows = vise_core::run_sweep(&config, 0).unwrap();
    let mut worst = f64::MAX;
    for row in &rows {
        let se = row.stats.aci_stderr.unwrap();
        assert!(
            row.stats.aci_mean >= -0.1 - 3.0 * se,
            "mu={}: aci={} +- {se}",
            row.dist.mean(),
            row.stats.aci_mean
        );
        worst = worst.min(row.stats.aci_mean);
    }
    println!("criterion 2 (no pit for sp egoists): PASS [min aci over grid = {worst:.4}]");
}

/// 3. Analytic oracle for the average increment of full-window altruists in
/// a neutral normal environment: E[ACI] = sigma / sqrt(2 pi n).
#[test]
fn criterion_03_full_window_altruist_analytic_aci() {
    let expected = SIGMA / (2.0 * std::f64::consts::PI * AGENTS as f64).sqrt();
    let dist = DistributionSpec::normal(0.0, SIGMA).unwrap();
    let mode = ModeConfig::new(Mode::NoExtinction, 40.0, 500).unwrap();
    let full = Strategy::altruist(1.0).unwrap();
    let games: Vec<GameResult> = (0..400)
        .map(|r| {
            let seed = vise_core::derive_seed(0xAC03, 0, r);
            run_game(&dist, full, &mode, AGENTS, seed).unwrap()
        })
        .collect();
    let agg = aggregate(&games, AGENTS).unwrap();
    let se = agg.aci_stderr.unwrap();
    assert!(
        (agg.aci_mean - expected).abs() <= 3.0 * se,
        "mean={} expected={expected} se={se}",
        agg.aci_mean
    );
    println!(
        "criterion 3 (analytic altruist aci): PASS [mean={:.4}+-{:.4} vs {:.4}]",
        agg.aci_mean, se, expected
    );
}

/// Adaptive Simpson quadrature (independent of the library's paths).
fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 40)
}

/// 4. Scale formula, twice over: the numerically integrated variance of the
/// density matches sigma^2 for a spread of tail indices, and the sampler's
/// empirical variance agrees at one million draws.
#[test]
fn criterion_04_sp_variance_two_oracles() {
    for k in [2.1, 3.0, 20.0, 200.0, 1000.0] {
        let a = sym_pareto::scale(k, SIGMA).unwrap();
        let integrand = |x: f64| x * x * sym_pareto::pdf(x, k, 0.0, SIGMA).unwrap();
        // Dyadic blocks reach far enough for tails as slow as x^-1.1.
        let mut var = adaptive_simpson(&integrand, 0.0, a * 2f64.powi(-30), 1e-14);
        for j in -30..170 {
            var += adaptive_simpson(&integrand, a * 2f64.powi(j), a * 2f64.powi(j + 1), 1e-13);
        }
        var *= 2.0;
        let rel = (var - SIGMA * SIGMA).abs() / (SIGMA * SIGMA);
        assert!(rel < 1e-4, "k={k}: integrated variance {var}, rel {rel:.2e}");
    }

    let spec = DistributionSpec::symmetrized_pareto(20.0, 0.0, SIGMA).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC04);
    let draws = spec.sample(&mut rng, 1_000_000);
    let mean = draws.iter().sum::<f64>() / draws.len() as f64;
    let var =
        draws.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (draws.len() as f64 - 1.0);
    assert!(
        (var - 6400.0).abs() < 0.02 * 6400.0,
        "monte carlo variance {var}"
    );
    println!("criterion 4 (variance oracles): PASS [mc variance = {var:.1}]");
}

/// 5. Quantile/cdf consistency to 1e-12 across the unit interval.
#[test]
fn criterion_05_quantile_cdf_consistency() {
    let mut worst: f64 = 0.0;
    for k in [2.01, 3.0, 20.0] {
        for i in 0..10_000 {
            let u = (i as f64 + 0.5) / 10_000.0;
            let x = sym_pareto::quantile(u, k, -15.0, SIGMA).unwrap();
            let diff = (sym_pareto::cdf(x, k, -15.0, SIGMA) - u).abs();
            worst = worst.max(diff);
            assert!(diff < 1e-12, "k={k} u={u}: diff={diff:e}");
        }
    }
    println!("criterion 5 (quantile consistency): PASS [max |F(Q(u))-u| = {worst:.2e}]");
}

/// 6. Laplace limit: at tail index 1000 the cdf sits within 1e-3 of the
/// Laplace cdf over +-10 sigma, and the gap shrinks monotonically in k.
#[test]
fn criterion_06_laplace_limit() {
    let (mean, sd) = (-15.0, SIGMA);
    let sup = |k: f64| {
        (0..=4000)
            .map(|i| {
                let x = mean - 10.0 * sd + i as f64 * (20.0 * sd / 4000.0);
                (sym_pareto::cdf(x, k, mean, sd) - laplace::cdf(x, mean, sd)).abs()
            })
            .fold(0.0, f64::max)
    };
    let (s10, s100, s1000) = (sup(10.0), sup(100.0), sup(1000.0));
    assert!(s10 > s100 && s100 > s1000, "sups {s10} {s100} {s1000}");
    assert!(s1000 < 1e-3, "sup at k=1000: {s1000}");
    println!(
        "criterion 6 (laplace limit): PASS [sup gaps 10/100/1000 = {s10:.2e}/{s100:.2e}/{s1000:.2e}]"
    );
}

/// 7. Tail-heaviness suite: unit mass at z=0, the Chebyshev bound, the
/// pinned reference values, and the crossing structure of the curves.
#[test]
fn criterion_07_tail_heaviness_suite() {
    let families: Vec<(&str, DistributionSpec)> = vec![
        ("normal", DistributionSpec::normal(0.0, 1.0).unwrap()),
        ("sp2.01", DistributionSpec::symmetrized_pareto(2.01, 0.0, 1.0).unwrap()),
        ("sp2.1", DistributionSpec::symmetrized_pareto(2.1, 0.0, 1.0).unwrap()),
        ("sp3", DistributionSpec::symmetrized_pareto(3.0, 0.0, 1.0).unwrap()),
        ("sp20", DistributionSpec::symmetrized_pareto(20.0, 0.0, 1.0).unwrap()),
        ("t3", DistributionSpec::student_t3(0.0, 1.0).unwrap()),
        ("laplace", DistributionSpec::laplace(0.0, 1.0).unwrap()),
    ];

    // w(0) = 1 for every family, and w(z) <= z^-2 on (0, 100].
    for (name, spec) in &families {
        assert_eq!(spec.tail_heaviness(0.0).unwrap(), 1.0, "{name}");
        for i in 1..=10_000 {
            let z = i as f64 / 100.0;
            let w = spec.tail_heaviness(z).unwrap();
            assert!(w <= 1.0 / (z * z) + 1e-15, "{name} z={z}: w={w:e}");
        }
    }

    // Concentration of the near-degenerate family: w(0.18) = 0.08 +- 0.005.
    let w018 = sym_pareto::tail_heaviness(0.18, 2.01);
    assert!((w018 - 0.08).abs() <= 0.005, "w(0.18) = {w018}");

    // The normal curve is the heaviest of the compared set (the laplace
    // asymptote is not part of it; it crosses the normal near 1.65) up to
    // z = 1.7 and loses that position between 1.7 and 1.8.
    let is_heaviest = |z: f64| {
        let wn = normal::tail_heaviness(z);
        families
            .iter()
            .filter(|(name, _)| *name != "normal" && *name != "laplace")
            .all(|(_, spec)| wn > spec.tail_heaviness(z).unwrap())
    };
    for i in 1..=17 {
        assert!(is_heaviest(i as f64 / 10.0), "z={}", i as f64 / 10.0);
    }
    assert!(!is_heaviest(1.8), "normal still heaviest at z=1.8");

    // Tail index 3 dominates every compared curve on [3.2, 26.5].
    for i in 0..=233 {
        let z = 3.2 + i as f64 * (26.5 - 3.2) / 233.0;
        let w3 = sym_pareto::tail_heaviness(z, 3.0);
        for (name, spec) in &families {
            if *name == "sp3" || *name == "laplace" {
                continue; // laplace is not part of the compared set
            }
            assert!(w3 > spec.tail_heaviness(z).unwrap(), "{name} at z={z}");
        }
    }

    // Log-space crossover of the two super-heavy curves: near 9e10, at a
    // shared mass near 5e-25.
    let g = |z: f64| {
        sym_pareto::log_tail_heaviness(z, 2.01) - sym_pareto::log_tail_heaviness(z, 2.1)
    };
    let (mut lo, mut hi) = (1e8_f64, 1e13_f64);
    assert!(g(lo) < 0.0 && g(hi) > 0.0);
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let crossing = (lo * hi).sqrt();
    assert!(
        (4.5e10..=1.8e11).contains(&crossing),
        "crossing at {crossing:e}"
    );
    let w_cross = sym_pareto::log_tail_heaviness(crossing, 2.1).exp();
    assert!((5e-26..=5e-24).contains(&w_cross), "w at crossing {w_cross:e}");

    // Student-t3 reference point: w(3) = 0.003 +- 0.0005.
    let wt3 = student_t::tail_heaviness(3.0);
    assert!((wt3 - 0.003).abs() <= 0.0005, "t3 w(3) = {wt3}");

    println!(
        "criterion 7 (tail heaviness): PASS \
         [w_sp2.01(0.18)={w018:.4}, crossover z={crossing:.3e} w={w_cross:.2e}, t3 w(3)={wt3:.5}]"
    );
}

/// 8. Aggressive SP environment: egoists out-survive even the altruists
/// who support the whole society.
#[test]
fn criterion_08_egoists_survive_aggressive_sp() {
    let config = sweep_setup(
        vec![Family::SymmetrizedPareto { tail_index: 20.0 }],
        vec![-15.0],
        vec![Strategy::Egoist, Strategy::Altruist { window_fraction: 1.0 }],
        Mode::Extinction,
        0xAC08,
    );
    let rows = vise_core::run_sweep(&config, 0).unwrap();
    let (ego, alt) = (&rows[0].stats, &rows[1].stats);
    let combined =
        (ego.survival_stderr.unwrap().powi(2) + alt.survival_stderr.unwrap().powi(2)).sqrt();
    assert!(
        ego.survival_mean - alt.survival_mean >= 3.0 * combined,
        "egoist {} vs altruist {} (combined se {combined})",
        ego.survival_mean,
        alt.survival_mean
    );
    println!(
        "criterion 8 (sp survival ordering): PASS [egoist {:.3} vs full-window {:.3}]",
        ego.survival_mean, alt.survival_mean
    );
}

/// 9. Favorable normal environment: the narrow support window survives
/// better, while the full window still wins on average increment.
#[test]
fn criterion_09_favorable_window_reversal() {
    let config = sweep_setup(
        vec![Family::Normal],
        vec![10.0],
        vec![
            Strategy::Altruist { window_fraction: 0.3 },
            Strategy::Altruist { window_fraction: 1.0 },
        ],
        Mode::Extinction,
        0xAC09,
    );
    let rows = vise_core::run_sweep(&config, 0).unwrap();
    let (narrow, full) = (&rows[0].stats, &rows[1].stats);
    let combined =
        (narrow.survival_stderr.unwrap().powi(2) + full.survival_stderr.unwrap().powi(2)).sqrt();
    assert!(
        narrow.survival_mean - full.survival_mean >= 2.0 * combined,
        "narrow {} vs full {} (combined se {combined})",
        narrow.survival_mean,
        full.survival_mean
    );
    assert!(
        full.aci_mean >= narrow.aci_mean,
        "full-window aci {} below narrow-window aci {}",
        full.aci_mean,
        narrow.aci_mean
    );
    println!(
        "criterion 9 (favorable-window reversal): PASS \
         [survival narrow {:.3} > full {:.3}; aci full {:.2} >= narrow {:.2}]",
        narrow.survival_mean, full.survival_mean, full.aci_mean, narrow.aci_mean
    );
}

/// Exact majority tail by enumerating all 2^n outcomes.
fn binomial_majority_tail(n: usize, p: f64) -> f64 {
    (0u32..(1 << n))
        .filter(|mask| 2 * mask.count_ones() as usize > n)
        .map(|mask| {
            let yes = mask.count_ones() as i32;
            p.powi(yes) * (1.0 - p).powi(n as i32 - yes)
        })
        .sum()
}

/// 10. Small-instance brute force: egoist acceptance follows the exact
/// binomial majority law, and altruist decisions survive an exhaustive
/// rank-based recount on every step.
#[test]
fn criterion_10_small_instance_brute_force() {
    let p = 0.6;
    let steps = 100_000;
    for n in 1..=11usize {
        let state = SocietyState::new(n, 40.0);
        let mut rng = ChaCha8Rng::seed_from_u64(0xAC10 + n as u64);
        let mut accepted = 0usize;
        for _ in 0..steps {
            let inc: Vec<f64> = (0..n)
                .map(|_| if rng.gen::<f64>() < p { 1.0 } else { -1.0 })
                .collect();
            if tally(cast_votes(&state, &Proposal::new(inc), Strategy::Egoist), n) {
                accepted += 1;
            }
        }
        let expected = binomial_majority_tail(n, p);
        let freq = accepted as f64 / steps as f64;
        let se = (expected * (1.0 - expected) / steps as f64).sqrt();
        assert!(
            (freq - expected).abs() <= 3.0 * se,
            "n={n}: freq={freq} expected={expected} se={se}"
        );
    }

    // Altruists with an evolving, tie-riddled capital profile.
    let n = 9;
    let window = 0.4;
    let strategy = Strategy::altruist(window).unwrap();
    let mut state = SocietyState::new(n, 10.0);
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC10);
    for _ in 0..steps {
        if state.alive_count() == 0 {
            break;
        }
        let inc: Vec<f64> = (0..state.alive_count())
            .map(|_| if rng.gen::<f64>() < 0.5 { 1.0 } else { -1.0 })
            .collect();
        let proposal = Proposal::new(inc);
        let accept = tally(
            cast_votes(&state, &proposal, strategy),
            state.alive_count(),
        );

        // Exhaustive recount: membership by (capital, id) rank.
        let alive_ids: Vec<usize> = (0..state.len()).filter(|&i| state.alive()[i]).collect();
        let supported = support_count(alive_ids.len(), window);
        let mut window_sum = 0.0;
        for (pos, &id) in alive_ids.iter().enumerate() {
            let rank = alive_ids
                .iter()
                .filter(|&&o| (state.capitals()[o], o) < (state.capitals()[id], id))
                .count();
            if rank < supported {
                window_sum += proposal.increments()[pos];
            }
        }
        assert_eq!(accept, window_sum > 0.0);

        apply_step(&mut state, &proposal, accept);
        eliminate_bankrupts(&mut state);
    }
    println!("criterion 10 (small-instance brute force): PASS [n=1..11 binomial, altruist recount]");
}

/// 11. Determinism of the command-line sweep: identical config and seed
/// give byte-identical CSV at any worker count, across repeated runs.
#[test]
fn criterion_11_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("sweep.cfg");
    std::fs::write(
        &config_path,
        "family = sp,normal\nk = 20\nmu_grid = -15,-5,5\nreplicates = 6\n\
         strategies = egoist,altruist:65\nmode = extinct\nsteps = 120\nn = 51\nbase_seed = 90210\n",
    )
    .unwrap();

    let run = |out: &std::path::Path, workers: &str| {
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_vise"))
            .args(["sweep", "--config"])
            .arg(&config_path)
            .arg("--out")
            .arg(out)
            .args(["--workers", workers])
            .status()
            .unwrap();
        assert!(status.success(), "sweep exited with {status}");
        std::fs::read(out).unwrap()
    };

    let first = run(&dir.path().join("a.csv"), "1");
    let second = run(&dir.path().join("b.csv"), "1");
    let third = run(&dir.path().join("c.csv"), "8");
    let fourth = run(&dir.path().join("d.csv"), "8");
    assert_eq!(first, second, "repeated single-worker runs differ");
    assert_eq!(third, fourth, "repeated eight-worker runs differ");
    assert_eq!(first, third, "worker count changed the bytes");
    assert_eq!(
        first.iter().filter(|&&b| b == b'\n').count(),
        13,
        "expected 12 rows plus header"
    );
    println!("criterion 11 (cli determinism): PASS [4 runs, 1 vs 8 workers, byte-identical]");
}
