//! Deterministic report rendering. Every writer returns the full file body
//! as a string so commands do exactly one filesystem write per artifact and
//! tests can compare bytes.

use disasm_core::{BaselineStats, InfluenceTable, Part, ScoredCandidate, SensitivityCurve};

/// Formats a float with six significant digits, '.' separator, no locale.
/// Zero collapses to "0"; magnitudes below 1e-4 switch to exponential so
/// tiny standard deviations stay readable.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let mag = x.abs();
    if mag < 1e-4 {
        return format!("{x:.5e}");
    }
    let decimals = (5 - mag.log10().floor() as i64).max(0) as usize;
    format!("{x:.decimals$}")
}

fn removal_set_cell(candidate: &ScoredCandidate) -> String {
    let ids: Vec<String> = candidate
        .candidate
        .removal_set
        .iter()
        .map(usize::to_string)
        .collect();
    ids.join(";")
}

fn degenerate_cell(candidate: &ScoredCandidate) -> &'static str {
    match (candidate.degenerate_j, candidate.degenerate_a) {
        (false, false) => "none",
        (true, false) => "J",
        (false, true) => "A",
        (true, true) => "JA",
    }
}

pub const CANDIDATE_COLUMNS: &str =
    "rank,host,removal_set,r,subset_influence,delta_E,delta_T,delta_D_mm,rho_J,rho_A,degenerate_flags";

pub fn candidates_csv(candidates: &[ScoredCandidate]) -> String {
    let mut out = String::from(CANDIDATE_COLUMNS);
    out.push('\n');
    for (rank, c) in candidates.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            rank + 1,
            c.candidate.host,
            removal_set_cell(c),
            c.candidate.r,
            fmt_sig(c.candidate.subset_influence),
            c.delta_e,
            c.delta_t,
            fmt_sig(c.delta_d_mm),
            fmt_sig(c.rho_j),
            fmt_sig(c.rho_a),
            degenerate_cell(c),
        ));
    }
    out
}

pub fn candidates_markdown(candidates: &[ScoredCandidate]) -> String {
    let mut out = String::from("# Fastener-reduction candidates\n\n");
    out.push_str(
        "| rank | host | removal set | r | subset influence | dE | dT | dD (mm) | rho_J | rho_A | degenerate |\n",
    );
    out.push_str("|---|---|---|---|---|---|---|---|---|---|---|\n");
    for (rank, c) in candidates.iter().enumerate() {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            rank + 1,
            c.candidate.host,
            removal_set_cell(c),
            c.candidate.r,
            fmt_sig(c.candidate.subset_influence),
            c.delta_e,
            c.delta_t,
            fmt_sig(c.delta_d_mm),
            fmt_sig(c.rho_j),
            fmt_sig(c.rho_a),
            degenerate_cell(c),
        ));
    }
    out
}

pub fn candidates_json(candidates: &[ScoredCandidate]) -> String {
    let mut out = serde_json::to_string_pretty(candidates).expect("candidates serialize");
    out.push('\n');
    out
}

pub fn influence_csv(parts: &[Part], table: &InfluenceTable) -> String {
    let mut out = String::from("id,label,c_const,c_obj,s\n");
    for part in parts {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            part.id,
            part.label,
            fmt_sig(table.c_const[part.id]),
            fmt_sig(table.c_obj[part.id]),
            fmt_sig(table.s[part.id]),
        ));
    }
    out
}

pub fn influence_json(table: &InfluenceTable) -> String {
    let mut out = serde_json::to_string_pretty(table).expect("influence table serialize");
    out.push('\n');
    out
}

pub fn baseline_csv(r: usize, stats: &BaselineStats) -> String {
    format!(
        "r,trials,seed,delta_E_mean,delta_E_std,delta_T_mean,delta_T_std,delta_D_mm_mean,delta_D_mm_std,rho_J_mean,rho_A_mean\n{},{},{},{},{},{},{},{},{},{},{}\n",
        r,
        stats.trials,
        stats.seed,
        fmt_sig(stats.delta_e.mean),
        fmt_sig(stats.delta_e.std),
        fmt_sig(stats.delta_t.mean),
        fmt_sig(stats.delta_t.std),
        fmt_sig(stats.delta_d_mm.mean),
        fmt_sig(stats.delta_d_mm.std),
        fmt_sig(stats.rho_j_mean),
        fmt_sig(stats.rho_a_mean),
    )
}

pub fn sensitivity_csv(curve: &SensitivityCurve) -> String {
    let mut out = String::from("R_max,max_abs_dE,max_abs_dT,max_abs_dD_mm\n");
    for point in &curve.points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            point.r_max,
            point.max_abs_delta_e,
            point.max_abs_delta_t,
            fmt_sig(point.max_abs_delta_d_mm),
        ));
    }
    out
}
