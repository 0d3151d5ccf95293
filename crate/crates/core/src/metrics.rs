//! Candidate impact metrics: geometric stability ratios of a fastener group
//! and operational efficiency deltas of the disassembly sequence.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{convex_hull_area, distance, pca_plane_projection, polar_moment};
use crate::model::{subsequence_excluding, AssemblyBundle, HostGroup};

/// Distance comparisons ignore differences below this threshold (mm); used
/// both for tie detection and for snapping float residue off quantities
/// that are zero or sign-bounded analytically.
pub const DISTANCE_TIE_EPSILON_MM: f64 = 1e-9;

/// Stability of a fastener group after removing a subset.
///
/// The degenerate flags record that the corresponding "before" quantity was
/// zero and the ratio-1 convention was applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityRatios {
    pub rho_j: f64,
    pub rho_a: f64,
    pub degenerate_j: bool,
    pub degenerate_a: bool,
}

/// Change in sequence-level efficiency after removing a set of parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EfficiencyDeltas {
    pub delta_t: i64,
    pub delta_d_mm: f64,
}

/// Stability ratios of `group` when the fasteners in `removed` are deleted.
///
/// rho_J compares the mean squared spread of the fastener centers, rho_A the
/// convex hull footprint on each point set's own best-fit plane. Conventions
/// for zero quantities: before == 0 gives ratio 1 with the degenerate flag
/// set; after == 0 with a positive before gives ratio 0.
pub fn stability_ratios(
    group: &HostGroup,
    removed: &BTreeSet<usize>,
    bundle: &AssemblyBundle,
) -> Result<StabilityRatios> {
    if let Some(&fastener) = removed.iter().find(|f| !group.fasteners.contains(f)) {
        return Err(Error::NotInGroup {
            host: group.host,
            fastener,
        });
    }
    let centers = |ids: &[usize]| -> Result<Vec<[f64; 3]>> {
        ids.iter().map(|&id| Ok(bundle.part(id)?.center)).collect()
    };
    let before = centers(&group.fasteners)?;
    let kept: Vec<usize> = group
        .fasteners
        .iter()
        .copied()
        .filter(|f| !removed.contains(f))
        .collect();
    let after = centers(&kept)?;

    let (rho_j, degenerate_j) = ratio(polar_moment(&before), polar_moment(&after));
    let (rho_a, degenerate_a) = ratio(footprint_area(&before), footprint_area(&after));
    Ok(StabilityRatios {
        rho_j,
        rho_a,
        degenerate_j,
        degenerate_a,
    })
}

fn footprint_area(points: &[[f64; 3]]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    convex_hull_area(&pca_plane_projection(points))
}

fn ratio(before: f64, after: f64) -> (f64, bool) {
    if before == 0.0 {
        (1.0, true)
    } else if after == 0.0 {
        (0.0, false)
    } else {
        (after / before, false)
    }
}

/// Number of adjacent steps in the sequence whose end-effector differs.
pub fn tool_changes(sequence: &[usize], bundle: &AssemblyBundle) -> Result<usize> {
    if sequence.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut changes = 0;
    for pair in sequence.windows(2) {
        if bundle.part(pair[0])?.tool != bundle.part(pair[1])?.tool {
            changes += 1;
        }
    }
    Ok(changes)
}

/// Summed Euclidean distance between consecutive component centers, in mm.
pub fn travel_distance(sequence: &[usize], bundle: &AssemblyBundle) -> Result<f64> {
    if sequence.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut total = 0.0;
    for pair in sequence.windows(2) {
        total += distance(bundle.part(pair[0])?.center, bundle.part(pair[1])?.center);
    }
    Ok(total)
}

/// Tool-change and travel-distance deltas between the baseline sequence and
/// the subsequence with `removed` deleted.
///
/// Deleting entries can only merge hops, so both deltas are always <= 0.
pub fn efficiency_deltas(
    bundle: &AssemblyBundle,
    removed: &BTreeSet<usize>,
) -> Result<EfficiencyDeltas> {
    for &id in removed {
        bundle.part(id)?;
    }
    if removed.len() >= bundle.part_count() {
        return Err(Error::RemovesAllParts(bundle.part_count()));
    }
    let baseline = bundle.baseline_sequence();
    let reduced = subsequence_excluding(baseline, removed)?;
    let delta_t = tool_changes(&reduced, bundle)? as i64 - tool_changes(baseline, bundle)? as i64;
    let raw = travel_distance(&reduced, bundle)? - travel_distance(baseline, bundle)?;
    // The triangle inequality makes the true delta <= 0; collinear hops can
    // leave positive rounding residue a few ulps wide, which is snapped off
    // so the sign invariant holds exactly.
    let delta_d_mm = if raw > 0.0 && raw < DISTANCE_TIE_EPSILON_MM {
        0.0
    } else {
        raw
    };
    Ok(EfficiencyDeltas { delta_t, delta_d_mm })
}
