//! Per-component influence scoring via positional swap simulation.
//!
//! For each component the baseline sequence is perturbed by deleting the
//! component and reinserting it at every other position; the score averages
//! how often those perturbations violate precedence constraints or degrade
//! the sequence-level efficiency objectives.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::{tool_changes, travel_distance};
use crate::model::AssemblyBundle;

pub use crate::metrics::DISTANCE_TIE_EPSILON_MM;

/// Influence scores for all components, indexed by part id.
///
/// `s[i] = (c_const[i] + c_obj[i]) / 2` holds exactly for every entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfluenceTable {
    pub c_const: Vec<f64>,
    pub c_obj: Vec<f64>,
    pub s: Vec<f64>,
}

/// All single-component positional perturbations of `sequence`.
///
/// Component `i` is deleted and reinserted at each of the other len-1
/// positions, in ascending insertion position order. Each result is a
/// permutation of the same ids.
pub fn generate_swaps(sequence: &[usize], i: usize) -> Result<Vec<Vec<usize>>> {
    if sequence.len() < 2 {
        return Err(Error::TooFewComponents(sequence.len()));
    }
    let original = sequence
        .iter()
        .position(|&id| id == i)
        .ok_or(Error::NotInSequence(i))?;
    let deleted: Vec<usize> = sequence
        .iter()
        .copied()
        .filter(|&id| id != i)
        .collect();
    let mut swaps = Vec::with_capacity(sequence.len() - 1);
    for pos in 0..sequence.len() {
        if pos == original {
            continue;
        }
        let mut s_k = deleted.clone();
        s_k.insert(pos, i);
        swaps.push(s_k);
    }
    Ok(swaps)
}

/// Number of blocking relations violated by the given order.
///
/// A nonzero `constraint[a][b]` means `a` blocks `b` and must precede it;
/// the violation count is the number of such pairs where `b` comes first.
/// `sequence` must be a permutation of `0..constraint.len()`.
pub fn count_constraint_violations(sequence: &[usize], constraint: &[Vec<i64>]) -> usize {
    let pairs = directed_pairs(constraint);
    violations_against(&pairs, &positions(sequence, constraint.len()))
}

fn directed_pairs(constraint: &[Vec<i64>]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for (a, row) in constraint.iter().enumerate() {
        for (b, &entry) in row.iter().enumerate() {
            if entry != 0 {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

fn positions(sequence: &[usize], n: usize) -> Vec<usize> {
    let mut pos = vec![0usize; n];
    for (k, &id) in sequence.iter().enumerate() {
        pos[id] = k;
    }
    pos
}

fn violations_against(pairs: &[(usize, usize)], pos: &[usize]) -> usize {
    pairs.iter().filter(|&&(a, b)| pos[b] < pos[a]).count()
}

/// Number of efficiency objectives (out of 2) the perturbed sequence
/// degrades relative to the baseline: tool changes strictly worse, and
/// travel distance worse by more than [`DISTANCE_TIE_EPSILON_MM`].
///
/// Both sequences must be permutations of the bundle's part ids.
pub fn count_objective_degradations(
    candidate: &[usize],
    baseline: &[usize],
    bundle: &AssemblyBundle,
) -> usize {
    let t_base = tool_changes(baseline, bundle).expect("baseline is a non-empty permutation");
    let d_base = travel_distance(baseline, bundle).expect("baseline is a non-empty permutation");
    degradations(candidate, t_base, d_base, bundle)
}

fn degradations(candidate: &[usize], t_base: usize, d_base: f64, bundle: &AssemblyBundle) -> usize {
    let t = tool_changes(candidate, bundle).expect("swap is a non-empty permutation");
    let d = travel_distance(candidate, bundle).expect("swap is a non-empty permutation");
    usize::from(t > t_base) + usize::from(d > d_base + DISTANCE_TIE_EPSILON_MM)
}

/// Influence scores for every component of the bundle.
///
/// Per component i over its n-1 swaps: `c_const[i]` is the mean violation
/// count, `c_obj[i]` the mean degradation count, and `s[i]` their average.
/// Penalty counts are accumulated as integers and divided once, and each
/// component's row is independent, so the result is bitwise identical
/// however the per-component loop is scheduled.
pub fn influence_scores(bundle: &AssemblyBundle) -> Result<InfluenceTable> {
    let n = bundle.part_count();
    if n < 2 {
        return Err(Error::TooFewComponents(n));
    }
    let baseline = bundle.baseline_sequence();
    let t_base = tool_changes(baseline, bundle)?;
    let d_base = travel_distance(baseline, bundle)?;
    let pairs = directed_pairs(bundle.constraint());

    let rows: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let swaps = generate_swaps(baseline, i).expect("baseline contains every id");
            let mut const_sum: u64 = 0;
            let mut obj_sum: u64 = 0;
            for s_k in &swaps {
                const_sum += violations_against(&pairs, &positions(s_k, n)) as u64;
                obj_sum += degradations(s_k, t_base, d_base, bundle) as u64;
            }
            let swaps_len = swaps.len() as f64;
            (const_sum as f64 / swaps_len, obj_sum as f64 / swaps_len)
        })
        .collect();

    let c_const: Vec<f64> = rows.iter().map(|&(c, _)| c).collect();
    let c_obj: Vec<f64> = rows.iter().map(|&(_, o)| o).collect();
    let s = c_const
        .iter()
        .zip(&c_obj)
        .map(|(&c, &o)| (c + o) / 2.0)
        .collect();
    Ok(InfluenceTable { c_const, c_obj, s })
}
