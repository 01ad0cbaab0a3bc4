//! Line-oriented `key = value` experiment configuration.
//!
//! Unknown and duplicate keys are rejected with their line number; missing
//! keys fall back to the standard defaults (201 agents, sigma 80, initial
//! capital 40, 500 steps, 100 replicates, integer mean grid from -25 to 15).
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt;

use vise_core::voting::{Mode, ModeConfig, Strategy};
use vise_core::{ExperimentConfig, Family};

/// A configuration-level failure; maps to exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(line: usize, msg: impl fmt::Display) -> Result<T, ConfigError> {
    Err(ConfigError(format!("line {line}: {msg}")))
}

const KNOWN_KEYS: &[&str] = &[
    "family",
    "k",
    "mu_grid",
    "sigma",
    "n",
    "c0",
    "steps",
    "replicates",
    "strategies",
    "mode",
    "base_seed",
    "common_random_numbers",
];

/// Parses the config text into an [`ExperimentConfig`].
pub fn parse(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut seen: BTreeMap<&str, (usize, String)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return err(line_no, format!("expected `key = value`, got `{line}`"));
        };
        let key = key.trim();
        let value = value.trim();
        let Some(&known) = KNOWN_KEYS.iter().find(|&&k| k == key) else {
            return err(line_no, format!("unknown key `{key}`"));
        };
        if let Some((first, _)) = seen.get(known) {
            return err(
                line_no,
                format!("duplicate key `{key}` (first set on line {first})"),
            );
        }
        seen.insert(known, (line_no, value.to_string()));
    }

    let lookup = |key: &str| seen.get(key).cloned();

    let sigma = parse_real(lookup("sigma"), "sigma")?.unwrap_or(80.0);
    let c0 = parse_real(lookup("c0"), "c0")?.unwrap_or(40.0);
    let agents = parse_int(lookup("n"), "n")?.unwrap_or(201) as usize;
    let steps = parse_int(lookup("steps"), "steps")?.unwrap_or(500) as u32;
    let replicates = parse_int(lookup("replicates"), "replicates")?.unwrap_or(100) as usize;
    let base_seed = parse_int(lookup("base_seed"), "base_seed")?.unwrap_or(0);

    let tail_index = parse_real(lookup("k"), "k")?;

    let families = match lookup("family") {
        None => vec![Family::Normal],
        Some((line, value)) => {
            let mut families = Vec::new();
            for token in value.split(',') {
                families.push(parse_family(token.trim(), tail_index, line)?);
            }
            families
        }
    };

    let mean_grid = match lookup("mu_grid") {
        None => (-25..=15).map(f64::from).collect(),
        Some((line, value)) => parse_grid(&value, line)?,
    };

    let strategies = match lookup("strategies") {
        None => vec![Strategy::Egoist],
        Some((line, value)) => {
            let mut out = Vec::new();
            for token in value.split(',') {
                out.push(parse_strategy(token.trim(), line)?);
            }
            out
        }
    };

    let mode = match lookup("mode") {
        None => Mode::NoExtinction,
        Some((line, value)) => match value.as_str() {
            "extinct" => Mode::Extinction,
            "noextinct" => Mode::NoExtinction,
            other => return err(line, format!("mode must be extinct|noextinct, got `{other}`")),
        },
    };

    let common_random_numbers = match lookup("common_random_numbers") {
        None => false,
        Some((line, value)) => match value.as_str() {
            "true" => true,
            "false" => false,
            other => {
                return err(
                    line,
                    format!("common_random_numbers must be true|false, got `{other}`"),
                )
            }
        },
    };

    let mode = ModeConfig::new(mode, c0, steps).map_err(|e| ConfigError(e.to_string()))?;
    Ok(ExperimentConfig {
        families,
        mean_grid,
        std_dev: sigma,
        agents,
        mode,
        replicates,
        strategies,
        base_seed,
        common_random_numbers,
    })
}

/// Family token: `normal`, `t3`, `laplace`, `sp` (tail index from the `k`
/// key) or `sp:<k>`.
pub fn parse_family(
    token: &str,
    default_tail: Option<f64>,
    line: usize,
) -> Result<Family, ConfigError> {
    match token {
        "normal" => Ok(Family::Normal),
        "t3" => Ok(Family::StudentT3),
        "laplace" => Ok(Family::Laplace),
        "sp" => match default_tail {
            Some(tail_index) => Ok(Family::SymmetrizedPareto { tail_index }),
            None => err(line, "family `sp` needs a `k = <tail index>` key or the sp:<k> form"),
        },
        other => match other.strip_prefix("sp:") {
            Some(k) => match k.parse::<f64>() {
                Ok(tail_index) => Ok(Family::SymmetrizedPareto { tail_index }),
                Err(_) => err(line, format!("bad tail index in `{other}`")),
            },
            None => err(
                line,
                format!("unknown family `{other}` (expected normal|sp|sp:<k>|t3|laplace)"),
            ),
        },
    }
}

fn parse_strategy(token: &str, line: usize) -> Result<Strategy, ConfigError> {
    if token == "egoist" {
        return Ok(Strategy::Egoist);
    }
    if let Some(pct) = token.strip_prefix("altruist:") {
        let pct: f64 = pct
            .parse()
            .map_err(|_| ConfigError(format!("line {line}: bad window percentage in `{token}`")))?;
        if !(pct > 0.0 && pct <= 100.0) {
            return err(line, format!("window percentage must lie in (0, 100], got {pct}"));
        }
        return Ok(Strategy::Altruist {
            window_fraction: pct / 100.0,
        });
    }
    err(
        line,
        format!("unknown strategy `{token}` (expected egoist or altruist:<pct>)"),
    )
}

/// Grid syntax: a comma list (`-5,-2,0`) or `start:step:stop` inclusive.
pub fn parse_grid(value: &str, line: usize) -> Result<Vec<f64>, ConfigError> {
    if value.contains(':') {
        let parts: Vec<&str> = value.split(':').collect();
        if parts.len() != 3 {
            return err(line, format!("grid `{value}` must be start:step:stop"));
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| ConfigError(format!("line {line}: bad number in grid `{value}`")))?;
        let (start, step, stop) = (nums[0], nums[1], nums[2]);
        if step == 0.0 || !step.is_finite() {
            return err(line, "grid step must be nonzero and finite");
        }
        if (stop - start) * step < 0.0 {
            return err(line, format!("grid `{value}` never reaches its stop value"));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        if count > 1_000_000 {
            return err(line, format!("grid `{value}` has {count} points"));
        }
        return Ok((0..count).map(|i| start + i as f64 * step).collect());
    }
    let mut out = Vec::new();
    for token in value.split(',') {
        let token = token.trim();
        if token.is_empty() {
            return err(line, "empty grid entry");
        }
        out.push(
            token
                .parse::<f64>()
                .map_err(|_| ConfigError(format!("line {line}: bad grid number `{token}`")))?,
        );
    }
    Ok(out)
}

fn parse_real(entry: Option<(usize, String)>, key: &str) -> Result<Option<f64>, ConfigError> {
    match entry {
        None => Ok(None),
        Some((line, value)) => value.parse::<f64>().map(Some).map_err(|_| {
            ConfigError(format!("line {line}: `{key}` expects a number, got `{value}`"))
        }),
    }
}

fn parse_int(entry: Option<(usize, String)>, key: &str) -> Result<Option<u64>, ConfigError> {
    match entry {
        None => Ok(None),
        Some((line, value)) => value.parse::<u64>().map(Some).map_err(|_| {
            ConfigError(format!(
                "line {line}: `{key}` expects a nonnegative integer, got `{value}`"
            ))
        }),
    }
}
