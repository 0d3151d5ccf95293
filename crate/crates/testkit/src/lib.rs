//! Shared fixtures and seeded random-bundle generators for the test suites.

use std::collections::{BTreeMap, BTreeSet};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use disasm_core::{AssemblyBundle, Part};

/// The seven-part demonstrator bundle used by the fixture tests.
pub const SEVEN_PART_JSON: &str = include_str!("../../../fixtures/seven_part.json");

const TOOLS: [&str; 4] = ["gripper_small", "gripper_large", "driver_m3", "driver_m4"];
const FASTENER_SUFFIXES: [&str; 3] = ["screw", "bolt", "nut"];

/// Seeded generator so every test names its stream explicitly.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Loads the seven-part fixture bundle.
pub fn seven_part_fixture() -> AssemblyBundle {
    AssemblyBundle::from_json_str(SEVEN_PART_JSON).expect("fixture bundle is valid")
}

/// A random valid bundle with `2..=max_n` parts.
///
/// Roughly 40% of parts are fasteners, each wired to one or two non-fastener
/// hosts (when any exist), so multi-fastened host groups are common. The
/// contact matrix is random symmetric, the constraint matrix sparse with
/// entries in -2..=2, centers lie on a millimeter grid, and the baseline
/// sequence is a random permutation.
#[allow(clippy::needless_range_loop)] // symmetric matrix fills
pub fn random_bundle(rng: &mut ChaCha8Rng, max_n: usize) -> AssemblyBundle {
    assert!(max_n >= 2);
    let n = rng.gen_range(2..=max_n);

    let parts: Vec<Part> = (0..n)
        .map(|id| {
            let fastener = rng.gen_bool(0.4);
            let label = if fastener {
                format!("p{id}_{}", FASTENER_SUFFIXES[rng.gen_range(0..3)])
            } else {
                format!("p{id}_body")
            };
            Part {
                id,
                label,
                center: [
                    rng.gen_range(0..=100) as f64,
                    rng.gen_range(0..=100) as f64,
                    rng.gen_range(0..=100) as f64,
                ],
                tool: TOOLS[rng.gen_range(0..TOOLS.len())].to_string(),
            }
        })
        .collect();

    let mut contact = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.4) {
                contact[i][j] = 1;
                contact[j][i] = 1;
            }
        }
    }

    let mut constraint = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(0.2) {
                constraint[i][j] = *[-2i64, -1, 1, 2].choose(rng).unwrap();
            }
        }
    }

    let hosts: Vec<usize> = parts
        .iter()
        .filter(|p| !p.is_fastener())
        .map(|p| p.id)
        .collect();
    let mut connections = Vec::new();
    if !hosts.is_empty() {
        for part in &parts {
            if !part.is_fastener() {
                continue;
            }
            for _ in 0..rng.gen_range(1..=2usize) {
                connections.push([*hosts.choose(rng).unwrap(), part.id]);
            }
        }
    }

    let mut baseline: Vec<usize> = (0..n).collect();
    baseline.shuffle(rng);

    AssemblyBundle::new(parts, contact, constraint, connections, baseline, BTreeMap::new())
        .expect("generated bundle is valid")
}

/// A bundle on which nothing can degrade: identical centers, one tool, no
/// constraints. All influence scores are exactly zero, which exercises the
/// constant-score paths. Parts alternate body/fastener and all fasteners
/// share host 0.
pub fn uniform_bundle(n: usize) -> AssemblyBundle {
    assert!(n >= 2);
    let parts: Vec<Part> = (0..n)
        .map(|id| Part {
            id,
            label: if id % 2 == 1 {
                format!("p{id}_screw")
            } else {
                format!("p{id}_body")
            },
            center: [5.0, 5.0, 5.0],
            tool: "gripper_small".to_string(),
        })
        .collect();
    let mut contact = vec![vec![0i64; n]; n];
    for (i, row) in contact.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if i != j {
                *cell = 1;
            }
        }
    }
    let connections = parts
        .iter()
        .filter(|p| p.is_fastener())
        .map(|p| [0, p.id])
        .collect();
    AssemblyBundle::new(
        parts,
        contact,
        vec![vec![0i64; n]; n],
        connections,
        (0..n).collect(),
        BTreeMap::new(),
    )
    .expect("uniform bundle is valid")
}

/// A random removal set over `0..n` of size `0..n` (never all parts).
pub fn random_removal_set(rng: &mut ChaCha8Rng, n: usize) -> BTreeSet<usize> {
    let size = rng.gen_range(0..n);
    rand::seq::index::sample(rng, n, size)
        .iter()
        .collect()
}
