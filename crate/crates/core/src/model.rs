//! Product data model: parts, contact/constraint matrices, connection edges,
//! the baseline disassembly sequence, and the JSON bundle document format.
//!
//! A bundle is immutable after loading; every operation on it is a pure read,
//! so bundles can be shared freely across worker threads.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Label tokens that mark a component as a fastener.
pub const FASTENER_TOKENS: [&str; 3] = ["_screw", "_bolt", "_nut"];

/// A single component of the assembly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Part {
    /// Dense 0-based index, unique within the bundle.
    pub id: usize,
    pub label: String,
    /// Center coordinates in millimeters.
    pub center: [f64; 3],
    /// End-effector used to remove this component.
    pub tool: String,
}

impl Part {
    /// A component is a fastener when its label contains `_screw`, `_bolt`
    /// or `_nut` (case-sensitive, anywhere in the label).
    pub fn is_fastener(&self) -> bool {
        FASTENER_TOKENS.iter().any(|t| self.label.contains(t))
    }
}

/// A non-fastener host part together with the fasteners attached to it.
///
/// Groups emitted by [`AssemblyBundle::host_groups`] always hold two or more
/// fasteners, each sharing a connection edge with the host. Fasteners are
/// listed in ascending id order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HostGroup {
    pub host: usize,
    pub fasteners: Vec<usize>,
}

/// On-disk shape of the bundle document.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct BundleDoc {
    parts: Vec<Part>,
    contact: Vec<Vec<i64>>,
    constraint: Vec<Vec<i64>>,
    connections: Vec<[usize; 2]>,
    baseline_sequence: Vec<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    meshes: BTreeMap<String, String>,
}

/// The full product description: parts, matrices, connection edges and the
/// baseline disassembly sequence.
///
/// All invariants are checked on construction:
/// - part ids are dense `0..n-1`, centers finite, tools non-empty;
/// - the contact matrix is binary, symmetric, with a zero diagonal;
/// - the constraint matrix is square with a zero diagonal;
/// - connection pairs reference valid, distinct ids;
/// - the baseline sequence is a permutation of all part ids.
#[derive(Debug, Clone, PartialEq)]
pub struct AssemblyBundle {
    parts: Vec<Part>,
    contact: Vec<Vec<u8>>,
    constraint: Vec<Vec<i64>>,
    connections: BTreeSet<(usize, usize)>,
    baseline_sequence: Vec<usize>,
    meshes: BTreeMap<usize, String>,
}

impl AssemblyBundle {
    /// Builds a bundle from already-parsed fields, running full validation.
    ///
    /// Parts may be given in any order; they are stored sorted by id.
    /// Connection pairs are normalized to `(lo, hi)` and deduplicated.
    pub fn new(
        parts: Vec<Part>,
        contact: Vec<Vec<i64>>,
        constraint: Vec<Vec<i64>>,
        connections: Vec<[usize; 2]>,
        baseline_sequence: Vec<usize>,
        meshes: BTreeMap<usize, String>,
    ) -> Result<Self> {
        let doc = BundleDoc {
            parts,
            contact,
            constraint,
            connections,
            baseline_sequence,
            meshes: meshes
                .into_iter()
                .map(|(id, path)| (id.to_string(), path))
                .collect(),
        };
        Self::from_doc(doc)
    }

    /// Parses and validates a bundle from a JSON byte slice.
    pub fn from_slice(bytes: &[u8]) -> Result<Self> {
        let doc: BundleDoc = serde_json::from_slice(bytes)?;
        Self::from_doc(doc)
    }

    /// Parses and validates a bundle from a JSON string.
    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_slice(text.as_bytes())
    }

    /// Parses and validates a bundle from a byte stream.
    pub fn from_reader(mut reader: impl Read) -> Result<Self> {
        let mut bytes = Vec::new();
        reader
            .read_to_end(&mut bytes)
            .map_err(|e| Error::validation(format!("failed to read bundle stream: {e}")))?;
        Self::from_slice(&bytes)
    }

    /// Serializes the bundle back to its JSON document form.
    ///
    /// Round-trip guarantee: parsing the output yields a bundle equal to
    /// `self`, field by field.
    pub fn to_json_string(&self) -> String {
        let doc = BundleDoc {
            parts: self.parts.clone(),
            contact: self
                .contact
                .iter()
                .map(|row| row.iter().map(|&v| i64::from(v)).collect())
                .collect(),
            constraint: self.constraint.clone(),
            connections: self.connections.iter().map(|&(a, b)| [a, b]).collect(),
            baseline_sequence: self.baseline_sequence.clone(),
            meshes: self
                .meshes
                .iter()
                .map(|(id, path)| (id.to_string(), path.clone()))
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("bundle document serializes")
    }

    fn from_doc(doc: BundleDoc) -> Result<Self> {
        let violations = validate_doc(&doc);
        if !violations.is_empty() {
            return Err(Error::Validation { violations });
        }

        let mut parts = doc.parts;
        parts.sort_by_key(|p| p.id);
        let contact = doc
            .contact
            .iter()
            .map(|row| row.iter().map(|&v| v as u8).collect())
            .collect();
        let connections = doc
            .connections
            .iter()
            .map(|&[a, b]| (a.min(b), a.max(b)))
            .collect();
        let meshes = doc
            .meshes
            .into_iter()
            .map(|(id, path)| (id.parse::<usize>().expect("validated mesh key"), path))
            .collect();

        Ok(AssemblyBundle {
            parts,
            contact,
            constraint: doc.constraint,
            connections,
            baseline_sequence: doc.baseline_sequence,
            meshes,
        })
    }

    /// Number of components in the bundle.
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// All parts, sorted by id (so `parts()[i].id == i`).
    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    /// Looks up a part by id.
    pub fn part(&self, id: usize) -> Result<&Part> {
        self.parts.get(id).ok_or(Error::UnknownPartId(id))
    }

    /// The symmetric binary contact matrix X_ctc.
    pub fn contact(&self) -> &[Vec<u8>] {
        &self.contact
    }

    /// The constraint transition matrix X_ctm. A nonzero entry `[a][b]`
    /// records that part `a` physically blocks the removal of part `b`,
    /// so `a` must precede `b` in any disassembly sequence.
    pub fn constraint(&self) -> &[Vec<i64>] {
        &self.constraint
    }

    /// Undirected connection (fastening) edges, normalized to `(lo, hi)`.
    pub fn connections(&self) -> &BTreeSet<(usize, usize)> {
        &self.connections
    }

    /// The baseline disassembly sequence, a permutation of all part ids.
    pub fn baseline_sequence(&self) -> &[usize] {
        &self.baseline_sequence
    }

    /// Optional per-part mesh file paths, used only by the report layer.
    pub fn meshes(&self) -> &BTreeMap<usize, String> {
        &self.meshes
    }

    /// Ids of every component whose label marks it as a fastener.
    pub fn fastener_ids(&self) -> BTreeSet<usize> {
        self.parts
            .iter()
            .filter(|p| p.is_fastener())
            .map(|p| p.id)
            .collect()
    }

    /// Groups fasteners by the non-fastener host part they are connected to.
    ///
    /// For every non-fastener part `p`, its group holds all fasteners that
    /// share a connection edge with `p`. Only groups with two or more
    /// fasteners are returned, ordered by ascending host id, fasteners in
    /// ascending id order. A fastener connected to several non-fastener
    /// parts appears in each such host's group.
    pub fn host_groups(&self) -> Vec<HostGroup> {
        let fasteners = self.fastener_ids();
        let mut attached: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(a, b) in &self.connections {
            for (host, other) in [(a, b), (b, a)] {
                if !fasteners.contains(&host) && fasteners.contains(&other) {
                    attached.entry(host).or_default().push(other);
                }
            }
        }
        attached
            .into_iter()
            .filter_map(|(host, mut group)| {
                group.sort_unstable();
                group.dedup();
                (group.len() >= 2).then_some(HostGroup {
                    host,
                    fasteners: group,
                })
            })
            .collect()
    }
}

/// Deletes `removed` from `sequence`, preserving the relative order of the
/// surviving entries.
///
/// Every removed id must be a member of the sequence.
pub fn subsequence_excluding(sequence: &[usize], removed: &BTreeSet<usize>) -> Result<Vec<usize>> {
    if let Some(&id) = removed.iter().find(|id| !sequence.contains(id)) {
        return Err(Error::NotInSequence(id));
    }
    Ok(sequence
        .iter()
        .copied()
        .filter(|id| !removed.contains(id))
        .collect())
}

fn validate_doc(doc: &BundleDoc) -> Vec<String> {
    let mut v = Vec::new();
    let n = doc.parts.len();

    if n == 0 {
        v.push("parts: must contain at least one part".to_string());
    }

    let mut seen = vec![false; n];
    for (idx, part) in doc.parts.iter().enumerate() {
        if part.id >= n {
            v.push(format!(
                "parts[{idx}].id: {} out of range for {n} parts (ids must be dense 0..{})",
                part.id,
                n.saturating_sub(1)
            ));
        } else if seen[part.id] {
            v.push(format!("parts[{idx}].id: duplicate id {}", part.id));
        } else {
            seen[part.id] = true;
        }
        for (axis, &c) in part.center.iter().enumerate() {
            if !c.is_finite() {
                v.push(format!("parts[{idx}].center[{axis}]: not finite"));
            }
        }
        if part.tool.is_empty() {
            v.push(format!("parts[{idx}].tool: must be non-empty"));
        }
    }

    validate_matrix(&doc.contact, n, "contact", &mut v);
    validate_matrix(&doc.constraint, n, "constraint", &mut v);

    if matrix_is_square(&doc.contact, n) {
        for i in 0..n {
            for j in 0..n {
                let entry = doc.contact[i][j];
                if entry != 0 && entry != 1 {
                    v.push(format!("contact[{i}][{j}]: expected 0 or 1, found {entry}"));
                }
                if j > i && entry != doc.contact[j][i] {
                    v.push(format!(
                        "contact[{i}][{j}]: not symmetric (contact[{j}][{i}] differs)"
                    ));
                }
            }
        }
    }

    for (k, &[a, b]) in doc.connections.iter().enumerate() {
        if a >= n {
            v.push(format!("connections[{k}]: part id {a} out of range"));
        }
        if b >= n {
            v.push(format!("connections[{k}]: part id {b} out of range"));
        }
        if a == b {
            v.push(format!("connections[{k}]: self-connection on part {a}"));
        }
    }

    if doc.baseline_sequence.len() != n {
        v.push(format!(
            "baseline_sequence: not a permutation (expected {n} entries, found {})",
            doc.baseline_sequence.len()
        ));
    }
    let mut counts = vec![0usize; n];
    for &id in &doc.baseline_sequence {
        if id >= n {
            v.push(format!(
                "baseline_sequence: not a permutation (id {id} out of range)"
            ));
        } else {
            counts[id] += 1;
        }
    }
    for (id, &count) in counts.iter().enumerate() {
        if count > 1 {
            v.push(format!(
                "baseline_sequence: not a permutation (id {id} appears {count} times)"
            ));
        } else if count == 0 && doc.baseline_sequence.len() == n {
            v.push(format!(
                "baseline_sequence: not a permutation (id {id} missing)"
            ));
        }
    }

    for key in doc.meshes.keys() {
        match key.parse::<usize>() {
            Ok(id) if id < n => {}
            _ => v.push(format!("meshes: key '{key}' is not a valid part id")),
        }
    }

    v
}

fn matrix_is_square(matrix: &[Vec<i64>], n: usize) -> bool {
    matrix.len() == n && matrix.iter().all(|row| row.len() == n)
}

fn validate_matrix(matrix: &[Vec<i64>], n: usize, name: &str, v: &mut Vec<String>) {
    if matrix.len() != n {
        v.push(format!(
            "{name}: expected {n} rows, found {}",
            matrix.len()
        ));
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            v.push(format!(
                "{name}: row {i} has length {}, expected {n}",
                row.len()
            ));
        }
    }
    if matrix_is_square(matrix, n) {
        for (i, row) in matrix.iter().enumerate() {
            if row[i] != 0 {
                v.push(format!("{name}[{i}][{i}]: diagonal must be 0"));
            }
        }
    }
}
