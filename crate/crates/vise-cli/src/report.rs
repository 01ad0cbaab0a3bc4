//! Plot-ready flat-file emitters. All real numbers are printed with nine
//! significant digits (lossy only below 1e-9 relative); integers print
//! exactly; inapplicable or missing fields are left empty.

use vise_core::voting::StepRecord;
use vise_core::{Family, SweepRow};

/// Nine significant digits in scientific form; round-trips through an f64
/// parser to within 1e-9 relative.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.8e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_real).unwrap_or_default()
}

/// Quotes a field if it holds a separator, quote, or newline. The fixed
/// vocabulary used here never needs it, but the emitted files stay valid
/// CSV even if labels change.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const SWEEP_HEADER: &str = "family,k,mu,sigma,n,c0,steps,mode,strategy,window_pct,\
replicates,base_seed,aci_mean,aci_stderr,survival_mean,survival_stderr,accept_share";

/// One CSV document for a sweep, one row per cell in sweep order.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(128 * (rows.len() + 1));
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for row in rows {
        let cells = [
            csv_field(row.dist.family().label()),
            fmt_opt(row.dist.family().tail_index()),
            fmt_real(row.dist.mean()),
            fmt_real(row.dist.std_dev()),
            row.agents.to_string(),
            fmt_real(row.mode.initial_capital()),
            row.mode.max_steps().to_string(),
            csv_field(row.mode.mode().label()),
            csv_field(row.strategy.label()),
            fmt_opt(row.strategy.window_fraction().map(|f| f * 100.0)),
            row.replicates.to_string(),
            row.base_seed.to_string(),
            fmt_real(row.stats.aci_mean),
            fmt_opt(row.stats.aci_stderr),
            fmt_real(row.stats.survival_mean),
            fmt_opt(row.stats.survival_stderr),
            fmt_real(row.stats.accept_share_mean),
        ];
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Column name for a tail-heaviness family: `sp` gets its tail index
/// appended so several indices can sit side by side.
pub fn tail_column_name(family: &Family) -> String {
    match family.tail_index() {
        Some(k) => format!("sp_k{k}"),
        None => family.label().to_string(),
    }
}

/// Columns `z` then `log10 w(z)` per family, rows over the z grid.
/// Everything is evaluated in log space, so entries stay finite far past
/// the linear-space underflow point.
pub fn tails_csv(z_grid: &[f64], columns: &[(String, Vec<f64>)]) -> String {
    let mut out = String::new();
    out.push('z');
    for (name, _) in columns {
        out.push(',');
        out.push_str(&csv_field(name));
    }
    out.push('\n');
    for (i, &z) in z_grid.iter().enumerate() {
        out.push_str(&fmt_real(z));
        for (_, values) in columns {
            out.push(',');
            out.push_str(&fmt_real(values[i]));
        }
        out.push('\n');
    }
    out
}

pub const TRACE_COMMENT: &str = "# capitals are reported after the step outcome; \
total_increment is the proposal sum and is applied only when accepted=1";
pub const TRACE_HEADER: &str = "step,alive_count,accepted,total_increment,min_capital,max_capital";

/// Per-step trace of a single game.
pub fn trace_csv(records: &[StepRecord]) -> String {
    let mut out = String::new();
    out.push_str(TRACE_COMMENT);
    out.push('\n');
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.step,
            r.alive_count,
            u8::from(r.accepted),
            fmt_real(r.total_increment),
            fmt_real(r.min_capital),
            fmt_real(r.max_capital),
        ));
    }
    out
}
