//! Analysis engine for fastener-reduction recommendations on products
//! described by contact-connection-constraint graphs.
//!
//! The library takes an [`AssemblyBundle`] (parts, contact and constraint
//! matrices, fastening connections, and a baseline disassembly sequence),
//! scores every component's influence on the sequence via positional swap
//! simulation, enumerates per-host fastener-removal candidates, and reports
//! the constraint, efficiency, and stability impact of each candidate.
//!
//! Entry points, roughly in pipeline order:
//! - [`AssemblyBundle::from_slice`] and friends load and validate a bundle;
//! - [`influence_scores`] ranks components by swap sensitivity;
//! - [`enumerate_candidates`] lists admissible removal sets per host group;
//! - [`recommend`] runs everything and returns ranked [`ScoredCandidate`]s;
//! - [`random_baseline`] and [`sensitivity_sweep`] produce the comparison
//!   experiments.
//!
//! All operations are pure functions over immutable bundles; parallel
//! evaluation (rayon) is bitwise identical to serial evaluation.

mod error;
pub mod geometry;
pub mod influence;
pub mod metrics;
pub mod model;
pub mod pipeline;
pub mod reduction;

pub use error::{Error, Result};
pub use influence::{
    count_constraint_violations, count_objective_degradations, generate_swaps, influence_scores,
    InfluenceTable, DISTANCE_TIE_EPSILON_MM,
};
pub use metrics::{
    efficiency_deltas, stability_ratios, tool_changes, travel_distance, EfficiencyDeltas,
    StabilityRatios,
};
pub use model::{subsequence_excluding, AssemblyBundle, HostGroup, Part, FASTENER_TOKENS};
pub use pipeline::{
    random_baseline, recommend, recommend_with_influence, sensitivity_sweep, BaselineStats,
    MeanStd, ScoredCandidate, SensitivityCurve, SensitivityPoint, DEFAULT_R_MAX, DEFAULT_SEED,
    DEFAULT_SWEEP, DEFAULT_TRIALS,
};
pub use reduction::{
    constraint_indicator, count_constraints, delta_constraints, enumerate_candidates,
    isolation_check, KeepMask, RemovalCandidate,
};
