//! Command-line front end for the disassembly-advisor library: bundle
//! validation, influence and recommendation reports, heatmap export with
//! optional mesh painting, and the baseline/sensitivity experiments.

pub mod app;
pub mod heatmap;
pub mod ply;
pub mod reports;
