//! Independent reference implementations used to cross-check the engine.
//!
//! Everything here is written from the definitions, separately from the
//! library code: graph counting goes through petgraph, hull area through
//! gift wrapping plus fan triangulation, influence through a standalone
//! exhaustive swap enumeration, and the pipeline oracle re-derives groups,
//! candidates, metrics, and ordering from scratch. Where the library pins a
//! canonical accumulation order (sum-then-single-divide, sequence-order
//! distance sums), the oracles follow the same order so integer-exact
//! quantities compare bitwise.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)] // naive index loops are the point here

use std::collections::{BTreeMap, BTreeSet};

use petgraph::graph::{NodeIndex, UnGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use disasm_core::AssemblyBundle;

/// Edge count of the subgraph induced by the kept nodes, built with
/// petgraph from the raw constraint matrix.
pub fn induced_edge_count(constraint: &[Vec<i64>], removed: &BTreeSet<usize>) -> u64 {
    let n = constraint.len();
    let mut graph: UnGraph<usize, ()> = UnGraph::new_undirected();
    let nodes: Vec<NodeIndex> = (0..n).map(|id| graph.add_node(id)).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if constraint[i][j] != 0 || constraint[j][i] != 0 {
                graph.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    graph
        .edge_indices()
        .filter(|&e| {
            let (a, b) = graph.edge_endpoints(e).expect("edge exists");
            !removed.contains(&graph[a]) && !removed.contains(&graph[b])
        })
        .count() as u64
}

pub fn tool_change_count(sequence: &[usize], bundle: &AssemblyBundle) -> usize {
    let mut count = 0;
    for k in 1..sequence.len() {
        let prev = &bundle.parts()[sequence[k - 1]].tool;
        let here = &bundle.parts()[sequence[k]].tool;
        if prev != here {
            count += 1;
        }
    }
    count
}

/// Path length in sequence order (the canonical summation order).
pub fn path_length(sequence: &[usize], bundle: &AssemblyBundle) -> f64 {
    let mut total = 0.0;
    for k in 1..sequence.len() {
        let a = bundle.parts()[sequence[k - 1]].center;
        let b = bundle.parts()[sequence[k]].center;
        let dx = a[0] - b[0];
        let dy = a[1] - b[1];
        let dz = a[2] - b[2];
        total += (dx * dx + dy * dy + dz * dz).sqrt();
    }
    total
}

/// Exhaustive influence table: every component, every reinsertion position,
/// violations counted by a position-pair scan.
pub fn exhaustive_influence(bundle: &AssemblyBundle) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = bundle.part_count();
    let baseline = bundle.baseline_sequence();
    let constraint = bundle.constraint();
    let t_base = tool_change_count(baseline, bundle);
    let d_base = path_length(baseline, bundle);

    let mut c_const = Vec::with_capacity(n);
    let mut c_obj = Vec::with_capacity(n);
    for i in 0..n {
        let orig = baseline.iter().position(|&id| id == i).expect("id in baseline");
        let mut const_sum: u64 = 0;
        let mut obj_sum: u64 = 0;
        let mut swaps = 0u64;
        for target in 0..n {
            if target == orig {
                continue;
            }
            let mut s_k: Vec<usize> = Vec::with_capacity(n);
            for &id in baseline {
                if id != i {
                    s_k.push(id);
                }
            }
            s_k.insert(target, i);

            for x in 0..n {
                for y in (x + 1)..n {
                    if constraint[s_k[y]][s_k[x]] != 0 {
                        const_sum += 1;
                    }
                }
            }
            if tool_change_count(&s_k, bundle) > t_base {
                obj_sum += 1;
            }
            if path_length(&s_k, bundle) > d_base + 1e-9 {
                obj_sum += 1;
            }
            swaps += 1;
        }
        assert_eq!(swaps, (n - 1) as u64, "every component gets n-1 swaps");
        c_const.push(const_sum as f64 / swaps as f64);
        c_obj.push(obj_sum as f64 / swaps as f64);
    }
    let s = (0..n).map(|i| (c_const[i] + c_obj[i]) / 2.0).collect();
    (c_const, c_obj, s)
}

/// Hull vertices by gift wrapping; ties on angle resolved toward the
/// farther point. Returns fewer than 3 vertices for degenerate inputs.
pub fn gift_wrap_hull(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    // +0.0 normalization keeps total_cmp consistent with numeric order, so
    // the sorted front is a true extreme point.
    let mut pts: Vec<[f64; 2]> = points.iter().map(|p| [p[0] + 0.0, p[1] + 0.0]).collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| -> f64 {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let dist2 = |a: [f64; 2], b: [f64; 2]| -> f64 {
        (a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1])
    };

    let start = pts[0];
    let mut hull = vec![start];
    let mut current = start;
    loop {
        let mut next = pts[0];
        for &candidate in &pts[1..] {
            if candidate == current {
                continue;
            }
            if next == current {
                next = candidate;
                continue;
            }
            let turn = cross(current, next, candidate);
            if turn < 0.0 || (turn == 0.0 && dist2(current, candidate) > dist2(current, next)) {
                next = candidate;
            }
        }
        if next == start {
            break;
        }
        hull.push(next);
        current = next;
        if hull.len() > pts.len() {
            panic!("gift wrapping failed to terminate on {pts:?}");
        }
    }
    hull
}

/// Hull area via fan triangulation from the first hull vertex.
pub fn fan_hull_area(points: &[[f64; 2]]) -> f64 {
    let hull = gift_wrap_hull(points);
    if hull.len() < 3 {
        return 0.0;
    }
    let origin = hull[0];
    let mut area = 0.0;
    for k in 1..hull.len() - 1 {
        let u = [hull[k][0] - origin[0], hull[k][1] - origin[1]];
        let v = [hull[k + 1][0] - origin[0], hull[k + 1][1] - origin[1]];
        area += (u[0] * v[1] - u[1] * v[0]).abs() / 2.0;
    }
    area
}

/// Mean squared distance from the centroid, in the canonical order
/// (per-axis sums divided once, then one squared-deviation pass).
pub fn spread(points: &[[f64; 3]]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let n = points.len() as f64;
    let mut cx = 0.0;
    let mut cy = 0.0;
    let mut cz = 0.0;
    for p in points {
        cx += p[0];
        cy += p[1];
        cz += p[2];
    }
    cx /= n;
    cy /= n;
    cz /= n;
    let mut acc = 0.0;
    for p in points {
        let dx = p[0] - cx;
        let dy = p[1] - cy;
        let dz = p[2] - cz;
        acc += dx * dx + dy * dy + dz * dz;
    }
    acc / n
}

fn ratio_convention(before: f64, after: f64) -> (f64, bool) {
    if before == 0.0 {
        (1.0, true)
    } else if after == 0.0 {
        (0.0, false)
    } else {
        (after / before, false)
    }
}

/// Whether at least three of the points span a proper triangle. Used to
/// decide hull-area positivity without computing the area itself.
fn spans_area(points: &[[f64; 3]]) -> bool {
    if points.len() < 3 {
        return false;
    }
    let p0 = points[0];
    for i in 1..points.len() {
        for j in (i + 1)..points.len() {
            let u = [
                points[i][0] - p0[0],
                points[i][1] - p0[1],
                points[i][2] - p0[2],
            ];
            let v = [
                points[j][0] - p0[0],
                points[j][1] - p0[1],
                points[j][2] - p0[2],
            ];
            let cx = u[1] * v[2] - u[2] * v[1];
            let cy = u[2] * v[0] - u[0] * v[2];
            let cz = u[0] * v[1] - u[1] * v[0];
            if cx != 0.0 || cy != 0.0 || cz != 0.0 {
                return true;
            }
        }
    }
    false
}

/// Stability ratios derived purely from the conventions. Only valid when
/// the surviving point set cannot span a proper hull (two or fewer points),
/// which holds for every fixture candidate; asserted.
pub fn convention_stability(
    before: &[[f64; 3]],
    after: &[[f64; 3]],
) -> (f64, bool, f64, bool) {
    assert!(
        after.len() <= 2,
        "convention-only oracle needs a degenerate after-set"
    );
    let (rho_j, degenerate_j) = ratio_convention(spread(before), spread(after));
    let a_before_positive = spans_area(before);
    let (rho_a, degenerate_a) = if !a_before_positive {
        (1.0, true)
    } else {
        (0.0, false)
    };
    (rho_j, degenerate_j, rho_a, degenerate_a)
}

pub const ORACLE_FASTENER_TOKENS: [&str; 3] = ["_screw", "_bolt", "_nut"];

pub fn fastener_ids(bundle: &AssemblyBundle) -> BTreeSet<usize> {
    bundle
        .parts()
        .iter()
        .filter(|p| ORACLE_FASTENER_TOKENS.iter().any(|t| p.label.contains(t)))
        .map(|p| p.id)
        .collect()
}

/// Host groups re-derived from the connection list: non-fastener part with
/// at least two connected fasteners, ascending everywhere.
pub fn host_groups(bundle: &AssemblyBundle) -> Vec<(usize, Vec<usize>)> {
    let fasteners = fastener_ids(bundle);
    let mut by_host: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(a, b) in bundle.connections() {
        if !fasteners.contains(&a) && fasteners.contains(&b) {
            by_host.entry(a).or_default().insert(b);
        }
        if !fasteners.contains(&b) && fasteners.contains(&a) {
            by_host.entry(b).or_default().insert(a);
        }
    }
    by_host
        .into_iter()
        .filter(|(_, fs)| fs.len() >= 2)
        .map(|(host, fs)| (host, fs.into_iter().collect()))
        .collect()
}

/// Remaining parts without contact to any other remaining part.
pub fn isolated_parts(bundle: &AssemblyBundle, removed: &BTreeSet<usize>) -> Vec<usize> {
    let n = bundle.part_count();
    let contact = bundle.contact();
    let mut isolated = Vec::new();
    for j in 0..n {
        if removed.contains(&j) {
            continue;
        }
        let mut touches = false;
        for k in 0..n {
            if k != j && !removed.contains(&k) && contact[j][k] == 1 {
                touches = true;
            }
        }
        if !touches {
            isolated.push(j);
        }
    }
    isolated
}

/// Fully re-derived ranked candidate list. Mirrors the documented contract
/// (descending-score prefixes, isolation filter, lowest-host dedup, ranking
/// order) with none of the library's analysis code.
pub struct OracleCandidate {
    pub host: usize,
    pub removal_set: BTreeSet<usize>,
    pub r: usize,
    pub subset_influence: f64,
    pub delta_e: i64,
    pub delta_t: i64,
    pub delta_d_mm: f64,
    pub rho_j: f64,
    pub rho_a: f64,
    pub degenerate_j: bool,
    pub degenerate_a: bool,
}

pub fn oracle_recommend(bundle: &AssemblyBundle, r_max: usize) -> Vec<OracleCandidate> {
    let (_, _, s) = exhaustive_influence(bundle);
    let baseline = bundle.baseline_sequence();
    let e_before = induced_edge_count(bundle.constraint(), &BTreeSet::new());
    let t_before = tool_change_count(baseline, bundle) as i64;
    let d_before = path_length(baseline, bundle);

    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut out: Vec<OracleCandidate> = Vec::new();
    for (host, fasteners) in host_groups(bundle) {
        let mut sorted = fasteners.clone();
        sorted.sort_by(|&a, &b| s[b].total_cmp(&s[a]).then(a.cmp(&b)));
        let mut influence_acc = 0.0;
        for r in 1..=r_max.min(sorted.len()) {
            influence_acc += s[sorted[r - 1]];
            let removal_set: BTreeSet<usize> = sorted[..r].iter().copied().collect();
            if !isolated_parts(bundle, &removal_set).is_empty() {
                continue;
            }
            if !seen.insert(removal_set.clone()) {
                continue;
            }
            let survivors: Vec<usize> = baseline
                .iter()
                .copied()
                .filter(|id| !removal_set.contains(id))
                .collect();
            let before_pts: Vec<[f64; 3]> = fasteners
                .iter()
                .map(|&f| bundle.parts()[f].center)
                .collect();
            let after_pts: Vec<[f64; 3]> = fasteners
                .iter()
                .filter(|f| !removal_set.contains(f))
                .map(|&f| bundle.parts()[f].center)
                .collect();
            let (rho_j, degenerate_j, rho_a, degenerate_a) =
                convention_stability(&before_pts, &after_pts);
            out.push(OracleCandidate {
                host,
                removal_set: removal_set.clone(),
                r,
                subset_influence: influence_acc,
                delta_e: induced_edge_count(bundle.constraint(), &removal_set) as i64
                    - e_before as i64,
                delta_t: tool_change_count(&survivors, bundle) as i64 - t_before,
                delta_d_mm: path_length(&survivors, bundle) - d_before,
                rho_j,
                rho_a,
                degenerate_j,
                degenerate_a,
            });
        }
    }
    out.sort_by(|a, b| {
        b.subset_influence
            .total_cmp(&a.subset_influence)
            .then(a.delta_e.cmp(&b.delta_e))
            .then(a.host.cmp(&b.host))
            .then(a.removal_set.cmp(&b.removal_set))
    });
    out
}

pub struct OracleBaseline {
    pub delta_e_mean: f64,
    pub delta_e_std: f64,
    pub delta_t_mean: f64,
    pub delta_t_std: f64,
    pub delta_d_mean: f64,
    pub delta_d_std: f64,
    pub rho_j_mean: f64,
    pub rho_a_mean: f64,
}

/// Replays the seeded draw protocol (ChaCha8 stream per trial, uniform
/// without-replacement draws, 100 attempts before a group is skipped) and
/// aggregates with independently written metric and statistics code.
pub fn oracle_baseline(
    bundle: &AssemblyBundle,
    r: usize,
    trials: usize,
    seed: u64,
) -> OracleBaseline {
    let groups = host_groups(bundle);
    let baseline = bundle.baseline_sequence();
    let e_before = induced_edge_count(bundle.constraint(), &BTreeSet::new()) as i64;
    let t_before = tool_change_count(baseline, bundle) as i64;
    let d_before = path_length(baseline, bundle);

    let mut per_trial: Vec<[f64; 5]> = Vec::new();
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let mut sums = [0.0f64; 5];
        let mut e_sum: i64 = 0;
        let mut t_sum: i64 = 0;
        let mut groups_done: u32 = 0;
        for (_, fasteners) in &groups {
            let k = r.min(fasteners.len());
            let mut accepted: Option<BTreeSet<usize>> = None;
            for _ in 0..100 {
                let drawn: BTreeSet<usize> =
                    rand::seq::index::sample(&mut rng, fasteners.len(), k)
                        .iter()
                        .map(|idx| fasteners[idx])
                        .collect();
                if isolated_parts(bundle, &drawn).is_empty() {
                    accepted = Some(drawn);
                    break;
                }
            }
            let Some(drawn) = accepted else { continue };

            e_sum += induced_edge_count(bundle.constraint(), &drawn) as i64 - e_before;
            let survivors: Vec<usize> = baseline
                .iter()
                .copied()
                .filter(|id| !drawn.contains(id))
                .collect();
            t_sum += tool_change_count(&survivors, bundle) as i64 - t_before;
            sums[2] += path_length(&survivors, bundle) - d_before;
            let before_pts: Vec<[f64; 3]> = fasteners
                .iter()
                .map(|&f| bundle.parts()[f].center)
                .collect();
            let after_pts: Vec<[f64; 3]> = fasteners
                .iter()
                .filter(|f| !drawn.contains(f))
                .map(|&f| bundle.parts()[f].center)
                .collect();
            let (rho_j, _, rho_a, _) = convention_stability(&before_pts, &after_pts);
            sums[3] += rho_j;
            sums[4] += rho_a;
            groups_done += 1;
        }
        if groups_done == 0 {
            continue;
        }
        let g = f64::from(groups_done);
        sums[0] = e_sum as f64;
        sums[1] = t_sum as f64;
        per_trial.push([sums[0] / g, sums[1] / g, sums[2] / g, sums[3] / g, sums[4] / g]);
    }

    let stat = |idx: usize| -> (f64, f64) {
        let n = per_trial.len() as f64;
        let mut mean = 0.0;
        for row in &per_trial {
            mean += row[idx];
        }
        mean /= n;
        let mut var = 0.0;
        for row in &per_trial {
            var += (row[idx] - mean) * (row[idx] - mean);
        }
        (mean, (var / n).sqrt())
    };
    let (delta_e_mean, delta_e_std) = stat(0);
    let (delta_t_mean, delta_t_std) = stat(1);
    let (delta_d_mean, delta_d_std) = stat(2);
    OracleBaseline {
        delta_e_mean,
        delta_e_std,
        delta_t_mean,
        delta_t_std,
        delta_d_mean,
        delta_d_std,
        rho_j_mean: stat(3).0,
        rho_a_mean: stat(4).0,
    }
}
