//! Fastener-removal simulation on the product graph: constraint-pair
//! counting under a keep-mask, the isolated-part safety check, and
//! enumeration of per-host removal candidates.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::influence::InfluenceTable;
use crate::model::AssemblyBundle;

/// Binary keep-mask over part ids: 0 exactly for removed parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeepMask {
    m: Vec<u8>,
}

impl KeepMask {
    /// Mask keeping every one of `n` parts.
    pub fn all_ones(n: usize) -> Self {
        KeepMask { m: vec![1; n] }
    }

    /// Mask over `n` parts with the members of `removed` zeroed.
    ///
    /// Every removed id must be below `n`.
    pub fn removing(n: usize, removed: &BTreeSet<usize>) -> Result<Self> {
        let mut m = vec![1u8; n];
        for &id in removed {
            *m.get_mut(id).ok_or(Error::UnknownPartId(id))? = 0;
        }
        Ok(KeepMask { m })
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    /// Whether part `id` survives under this mask.
    pub fn keeps(&self, id: usize) -> bool {
        self.m[id] == 1
    }
}

/// One removal recommendation: the top-`r` fasteners of a host group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemovalCandidate {
    pub host: usize,
    pub removal_set: BTreeSet<usize>,
    pub r: usize,
    /// Sum of the influence scores of the removed fasteners, accumulated in
    /// descending-score prefix order.
    pub subset_influence: f64,
}

/// Symmetric binary indicator of mutual blocking: `e[i][j] = 1` iff either
/// direction of the constraint matrix is nonzero.
pub fn constraint_indicator(constraint: &[Vec<i64>]) -> Result<Vec<Vec<u8>>> {
    let n = constraint.len();
    for (row, entries) in constraint.iter().enumerate() {
        if entries.len() != n {
            return Err(Error::NonSquareMatrix {
                rows: n,
                row,
                cols: entries.len(),
            });
        }
    }
    let mut e = vec![vec![0u8; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && (constraint[i][j] != 0 || constraint[j][i] != 0) {
                e[i][j] = 1;
            }
        }
    }
    Ok(e)
}

/// Number of surviving constraint pairs: sum of `m_i * m_j * e[i][j]` over
/// unique pairs `i < j`.
#[allow(clippy::needless_range_loop)] // the i < j pair sum reads best indexed
pub fn count_constraints(e: &[Vec<u8>], mask: &KeepMask) -> Result<u64> {
    let n = e.len();
    if mask.len() != n || e.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch {
            matrix: n,
            mask: mask.len(),
        });
    }
    let mut count = 0u64;
    for i in 0..n {
        for j in (i + 1)..n {
            count += u64::from(mask.m[i]) * u64::from(mask.m[j]) * u64::from(e[i][j]);
        }
    }
    Ok(count)
}

/// Change in the constraint-pair count when `removed` is deleted. Never
/// positive: removal only ever deletes pairs.
pub fn delta_constraints(bundle: &AssemblyBundle, removed: &BTreeSet<usize>) -> Result<i64> {
    let e = constraint_indicator(bundle.constraint())?;
    let n = bundle.part_count();
    let before = count_constraints(&e, &KeepMask::all_ones(n))?;
    let after = count_constraints(&e, &KeepMask::removing(n, removed)?)?;
    Ok(after as i64 - before as i64)
}

/// Remaining parts left with no contact to any other remaining part after
/// deleting `removed`, in ascending id order. An empty result means the
/// removal is admissible. A single-part remainder is reported as isolated.
pub fn isolation_check(bundle: &AssemblyBundle, removed: &BTreeSet<usize>) -> Result<Vec<usize>> {
    let n = bundle.part_count();
    for &id in removed {
        bundle.part(id)?;
    }
    if removed.len() >= n {
        return Err(Error::RemovesAllParts(n));
    }
    let contact = bundle.contact();
    let mut isolated = Vec::new();
    for (j, row) in contact.iter().enumerate() {
        if removed.contains(&j) {
            continue;
        }
        let touches_any = (0..n).any(|k| k != j && !removed.contains(&k) && row[k] != 0);
        if !touches_any {
            isolated.push(j);
        }
    }
    Ok(isolated)
}

/// Enumerates removal candidates over every multi-fastened host group.
///
/// Per group, fasteners are sorted by influence score descending (ties by
/// ascending id) and each top-`r` prefix for `r = 1..=min(R_max, |F_p|)`
/// becomes a candidate. Candidates that would isolate a remaining part are
/// discarded; duplicate removal sets arising from multi-host fasteners keep
/// only the lowest host id. Output order: ascending host, then ascending r.
pub fn enumerate_candidates(
    bundle: &AssemblyBundle,
    influence: &InfluenceTable,
    r_max: usize,
) -> Result<Vec<RemovalCandidate>> {
    if r_max < 1 {
        return Err(Error::InvalidRemovalLimit);
    }
    assert_eq!(
        influence.s.len(),
        bundle.part_count(),
        "influence table must cover every part"
    );

    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for group in bundle.host_groups() {
        let mut sorted = group.fasteners.clone();
        sorted.sort_by(|&a, &b| {
            influence.s[b]
                .total_cmp(&influence.s[a])
                .then(a.cmp(&b))
        });
        let mut subset_influence = 0.0;
        for r in 1..=r_max.min(sorted.len()) {
            subset_influence += influence.s[sorted[r - 1]];
            let removal_set: BTreeSet<usize> = sorted[..r].iter().copied().collect();
            if !isolation_check(bundle, &removal_set)?.is_empty() {
                continue;
            }
            if !seen.insert(removal_set.clone()) {
                continue;
            }
            out.push(RemovalCandidate {
                host: group.host,
                removal_set,
                r,
                subset_influence,
            });
        }
    }
    Ok(out)
}
