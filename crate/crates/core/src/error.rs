use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by bundle loading and by the analysis operations.
#[derive(Debug, Error)]
pub enum Error {
    /// The bundle document could not be parsed at all.
    #[error("failed to parse bundle document: {0}")]
    Parse(#[from] serde_json::Error),

    /// The document parsed but violates one or more bundle invariants.
    /// Every violation is listed, each with the path of the offending field.
    #[error("bundle validation failed:\n{}", violations.join("\n"))]
    Validation { violations: Vec<String> },

    #[error("unknown part id {0}")]
    UnknownPartId(usize),

    #[error("part id {0} is not a member of the sequence")]
    NotInSequence(usize),

    #[error("sequence must contain at least two components, found {0}")]
    TooFewComponents(usize),

    #[error("sequence is empty")]
    EmptySequence,

    #[error("matrix is not square: {rows} rows but row {row} has {cols} columns")]
    NonSquareMatrix { rows: usize, row: usize, cols: usize },

    #[error("dimension mismatch: matrix has {matrix} rows, mask has length {mask}")]
    DimensionMismatch { matrix: usize, mask: usize },

    #[error("removal set covers all {0} parts")]
    RemovesAllParts(usize),

    #[error("removal limit must be at least 1")]
    InvalidRemovalLimit,

    #[error("fastener {fastener} is not part of host {host}'s group")]
    NotInGroup { host: usize, fastener: usize },

    #[error("no host group has {0} or more fasteners")]
    NoEligibleGroup(usize),

    #[error("trial count must be at least 1")]
    NoTrials,

    #[error("every trial was skipped; no draw passed the isolation check")]
    NoSuccessfulTrials,

    #[error("removal-limit values must be non-empty and strictly ascending")]
    BadSweepRange,
}

impl Error {
    /// Single-violation validation error.
    pub(crate) fn validation(message: impl Into<String>) -> Self {
        Error::Validation {
            violations: vec![message.into()],
        }
    }
}
