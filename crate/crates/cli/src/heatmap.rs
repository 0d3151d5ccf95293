//! Normalized influence heatmaps: min-max scaling of a chosen score vector
//! onto [0, 1], with an optional restriction to the fasteners of
//! multi-fastened host groups.

use std::collections::{BTreeMap, BTreeSet};

use clap::ValueEnum;
use serde::Serialize;

use disasm_core::{AssemblyBundle, InfluenceTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScoreKind {
    /// Constraint-violation rate c_const.
    Const,
    /// Objective-degradation rate c_obj.
    Obj,
    /// Combined influence score s.
    Combined,
}

impl ScoreKind {
    pub fn name(self) -> &'static str {
        match self {
            ScoreKind::Const => "const",
            ScoreKind::Obj => "obj",
            ScoreKind::Combined => "combined",
        }
    }

    fn raw(self, table: &InfluenceTable) -> &[f64] {
        match self {
            ScoreKind::Const => &table.c_const,
            ScoreKind::Obj => &table.c_obj,
            ScoreKind::Combined => &table.s,
        }
    }
}

/// Scores normalized onto [0, 1]. When every raw score is equal the whole
/// map is zero; otherwise the minimum maps to 0 and the maximum to 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatmapScores {
    pub score_kind: String,
    pub values: BTreeMap<usize, f64>,
}

pub fn heatmap_scores(
    bundle: &AssemblyBundle,
    table: &InfluenceTable,
    kind: ScoreKind,
    fasteners_only: bool,
) -> HeatmapScores {
    let raw = kind.raw(table);
    let min = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let max = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    let mut values: BTreeMap<usize, f64> = raw
        .iter()
        .enumerate()
        .map(|(id, &v)| (id, if span == 0.0 { 0.0 } else { (v - min) / span }))
        .collect();
    // Normalization always runs over all components; the directive view
    // only filters what gets exported.
    if fasteners_only {
        let grouped: BTreeSet<usize> = bundle
            .host_groups()
            .into_iter()
            .flat_map(|g| g.fasteners)
            .collect();
        values.retain(|id, _| grouped.contains(id));
    }
    HeatmapScores {
        score_kind: kind.name().to_string(),
        values,
    }
}

pub fn heatmap_json(scores: &HeatmapScores) -> String {
    let mut out = serde_json::to_string_pretty(scores).expect("heatmap serialize");
    out.push('\n');
    out
}
