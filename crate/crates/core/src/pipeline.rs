//! End-to-end orchestration: influence scoring, candidate enumeration and
//! ranking, the random-selection baseline, and the removal-cap sensitivity
//! sweep.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::influence::{influence_scores, InfluenceTable};
use crate::metrics::{efficiency_deltas, stability_ratios};
use crate::model::{AssemblyBundle, HostGroup};
use crate::reduction::{delta_constraints, enumerate_candidates, isolation_check, RemovalCandidate};

/// Removal cap used when the caller does not supply one.
pub const DEFAULT_R_MAX: usize = 3;
/// Trial count for the random baseline.
pub const DEFAULT_TRIALS: usize = 20;
/// Seed for the random baseline.
pub const DEFAULT_SEED: u64 = 42;
/// Sweep range for the sensitivity analysis.
pub const DEFAULT_SWEEP: [usize; 4] = [1, 2, 3, 4];

/// Attempts per host group to draw a removal set passing the isolation
/// check before the group is skipped for that trial.
const MAX_DRAW_ATTEMPTS: usize = 100;

/// A removal candidate together with every reported impact metric.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoredCandidate {
    pub candidate: RemovalCandidate,
    pub delta_e: i64,
    pub delta_t: i64,
    pub delta_d_mm: f64,
    pub rho_j: f64,
    pub rho_a: f64,
    pub degenerate_j: bool,
    pub degenerate_a: bool,
}

/// Mean and population standard deviation of a per-trial quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

/// Aggregate results of the random-selection baseline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselineStats {
    pub trials: usize,
    pub seed: u64,
    pub delta_e: MeanStd,
    pub delta_t: MeanStd,
    pub delta_d_mm: MeanStd,
    pub rho_j_mean: f64,
    pub rho_a_mean: f64,
}

/// Best achievable impact magnitudes at one removal cap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SensitivityPoint {
    pub r_max: usize,
    pub max_abs_delta_e: i64,
    pub max_abs_delta_t: i64,
    pub max_abs_delta_d_mm: f64,
}

/// Sensitivity of the achievable impact to the removal cap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityCurve {
    pub points: Vec<SensitivityPoint>,
}

/// Runs the full analysis and returns ranked removal candidates.
///
/// Candidates are sorted by subset influence descending; ties break by more
/// negative delta_E, then ascending host id, then lexicographic removal
/// set, making the order total and deterministic.
pub fn recommend(bundle: &AssemblyBundle, r_max: usize) -> Result<Vec<ScoredCandidate>> {
    let influence = influence_scores(bundle)?;
    recommend_with_influence(bundle, &influence, r_max)
}

/// [`recommend`] with a precomputed influence table, so callers producing
/// both an influence report and recommendations score the bundle once.
pub fn recommend_with_influence(
    bundle: &AssemblyBundle,
    influence: &InfluenceTable,
    r_max: usize,
) -> Result<Vec<ScoredCandidate>> {
    let groups: BTreeMap<usize, HostGroup> = bundle
        .host_groups()
        .into_iter()
        .map(|g| (g.host, g))
        .collect();
    let mut scored = enumerate_candidates(bundle, influence, r_max)?
        .into_iter()
        .map(|candidate| score_candidate(bundle, &groups[&candidate.host], candidate))
        .collect::<Result<Vec<_>>>()?;
    scored.sort_by(|a, b| {
        b.candidate
            .subset_influence
            .total_cmp(&a.candidate.subset_influence)
            .then(a.delta_e.cmp(&b.delta_e))
            .then(a.candidate.host.cmp(&b.candidate.host))
            .then(a.candidate.removal_set.cmp(&b.candidate.removal_set))
    });
    Ok(scored)
}

fn score_candidate(
    bundle: &AssemblyBundle,
    group: &HostGroup,
    candidate: RemovalCandidate,
) -> Result<ScoredCandidate> {
    let delta_e = delta_constraints(bundle, &candidate.removal_set)?;
    let eff = efficiency_deltas(bundle, &candidate.removal_set)?;
    let stab = stability_ratios(group, &candidate.removal_set, bundle)?;
    Ok(ScoredCandidate {
        candidate,
        delta_e,
        delta_t: eff.delta_t,
        delta_d_mm: eff.delta_d_mm,
        rho_j: stab.rho_j,
        rho_a: stab.rho_a,
        degenerate_j: stab.degenerate_j,
        degenerate_a: stab.degenerate_a,
    })
}

/// Per-trial metric means for the random baseline.
struct TrialOutcome {
    delta_e: f64,
    delta_t: f64,
    delta_d_mm: f64,
    rho_j: f64,
    rho_a: f64,
}

/// Random-selection baseline: per trial, draws `min(r, |F_p|)` fasteners
/// uniformly without replacement from every multi-fastened host group and
/// evaluates the same metrics as [`recommend`].
///
/// Trial `t` uses a ChaCha8 generator seeded with `seed` on stream `t`, so
/// results are reproducible across runs, platforms, and thread counts.
/// Draws failing the isolation check are redrawn up to 100 times, after
/// which the group is skipped for that trial (logged at warn level). Each
/// trial's scalar per metric is the mean over its surviving groups;
/// means and population standard deviations aggregate over trials.
pub fn random_baseline(
    bundle: &AssemblyBundle,
    r: usize,
    trials: usize,
    seed: u64,
) -> Result<BaselineStats> {
    if r < 1 {
        return Err(Error::InvalidRemovalLimit);
    }
    if trials < 1 {
        return Err(Error::NoTrials);
    }
    let groups = bundle.host_groups();
    if !groups.iter().any(|g| g.fasteners.len() >= r) {
        return Err(Error::NoEligibleGroup(r));
    }

    let outcomes: Vec<Option<TrialOutcome>> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(bundle, &groups, r, seed, t))
        .collect::<Result<Vec<_>>>()?;

    let completed: Vec<&TrialOutcome> = outcomes.iter().flatten().collect();
    if completed.is_empty() {
        return Err(Error::NoSuccessfulTrials);
    }
    if completed.len() < trials {
        log::warn!(
            "random baseline: {} of {trials} trials produced no admissible draw",
            trials - completed.len()
        );
    }

    Ok(BaselineStats {
        trials,
        seed,
        delta_e: mean_std(completed.iter().map(|o| o.delta_e)),
        delta_t: mean_std(completed.iter().map(|o| o.delta_t)),
        delta_d_mm: mean_std(completed.iter().map(|o| o.delta_d_mm)),
        rho_j_mean: mean_std(completed.iter().map(|o| o.rho_j)).mean,
        rho_a_mean: mean_std(completed.iter().map(|o| o.rho_a)).mean,
    })
}

fn run_trial(
    bundle: &AssemblyBundle,
    groups: &[HostGroup],
    r: usize,
    seed: u64,
    trial: usize,
) -> Result<Option<TrialOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);

    let mut delta_e_sum: i64 = 0;
    let mut delta_t_sum: i64 = 0;
    let mut delta_d_sum = 0.0;
    let mut rho_j_sum = 0.0;
    let mut rho_a_sum = 0.0;
    let mut evaluated: u32 = 0;

    for group in groups {
        let k = r.min(group.fasteners.len());
        let Some(drawn) = draw_admissible(bundle, group, k, &mut rng) else {
            log::warn!(
                "random baseline: trial {trial}, host {}: no admissible draw in {MAX_DRAW_ATTEMPTS} attempts, skipping group",
                group.host
            );
            continue;
        };
        delta_e_sum += delta_constraints(bundle, &drawn)?;
        let eff = efficiency_deltas(bundle, &drawn)?;
        delta_t_sum += eff.delta_t;
        delta_d_sum += eff.delta_d_mm;
        let stab = stability_ratios(group, &drawn, bundle)?;
        rho_j_sum += stab.rho_j;
        rho_a_sum += stab.rho_a;
        evaluated += 1;
    }

    if evaluated == 0 {
        return Ok(None);
    }
    let g = f64::from(evaluated);
    Ok(Some(TrialOutcome {
        delta_e: delta_e_sum as f64 / g,
        delta_t: delta_t_sum as f64 / g,
        delta_d_mm: delta_d_sum / g,
        rho_j: rho_j_sum / g,
        rho_a: rho_a_sum / g,
    }))
}

fn draw_admissible(
    bundle: &AssemblyBundle,
    group: &HostGroup,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Option<BTreeSet<usize>> {
    for _ in 0..MAX_DRAW_ATTEMPTS {
        let drawn: BTreeSet<usize> = rand::seq::index::sample(rng, group.fasteners.len(), k)
            .iter()
            .map(|idx| group.fasteners[idx])
            .collect();
        if isolation_check(bundle, &drawn)
            .expect("group never covers all parts")
            .is_empty()
        {
            return Some(drawn);
        }
    }
    None
}

fn mean_std(values: impl Iterator<Item = f64> + Clone) -> MeanStd {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    MeanStd {
        mean,
        std: var.sqrt(),
    }
}

/// Best achievable impact magnitudes as the removal cap grows.
///
/// For each cap, [`recommend`] runs and the most negative delta_E, delta_T,
/// delta_D over all admissible candidates are reported as magnitudes; a cap
/// with no candidates yields zeros. Influence is scored once and reused
/// across caps.
pub fn sensitivity_sweep(bundle: &AssemblyBundle, r_values: &[usize]) -> Result<SensitivityCurve> {
    let ascending_positive = !r_values.is_empty()
        && r_values[0] >= 1
        && r_values.windows(2).all(|w| w[0] < w[1]);
    if !ascending_positive {
        return Err(Error::BadSweepRange);
    }
    let influence = influence_scores(bundle)?;
    let points = r_values
        .iter()
        .map(|&r_max| {
            let scored = recommend_with_influence(bundle, &influence, r_max)?;
            Ok(SensitivityPoint {
                r_max,
                max_abs_delta_e: scored.iter().map(|c| c.delta_e.abs()).max().unwrap_or(0),
                max_abs_delta_t: scored.iter().map(|c| c.delta_t.abs()).max().unwrap_or(0),
                max_abs_delta_d_mm: scored
                    .iter()
                    .map(|c| c.delta_d_mm.abs())
                    .fold(0.0, f64::max),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SensitivityCurve { points })
}
