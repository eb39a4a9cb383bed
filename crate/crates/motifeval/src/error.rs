use thiserror::Error;

use crate::types::OverlapViolation;

/// Errors produced by evaluation, generation, and analysis operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid time series: {0}")]
    InvalidSeries(String),

    #[error("invalid segment: start {start} > end {end}")]
    InvalidSegment { start: usize, end: usize },

    #[error("motif set must contain at least one motif")]
    EmptyMotifSet,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("ground-truth motif sets overlap ({} offending pair{})",
        .violations.len(), if .violations.len() == 1 { "" } else { "s" })]
    GroundTruthOverlap { violations: Vec<OverlapViolation> },

    #[error("ground truth contains no motif sets")]
    EmptyGroundTruth,

    #[error("dataset has {found} classes, need at least {needed}")]
    InsufficientClasses { needed: usize, found: usize },

    #[error("class '{class}' has {found} instances, need at least {needed}")]
    InsufficientInstances {
        class: String,
        needed: usize,
        found: usize,
    },

    #[error("cannot place {requested} insertions of total length {occupied} in a series of length {available}")]
    InsufficientSpace {
        requested: usize,
        occupied: usize,
        available: usize,
    },

    #[error("window is degenerate (zero variance), no unit-root test possible")]
    DegenerateWindow,

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("results table is missing cells: {}", .cells.join(", "))]
    MissingCell { cells: Vec<String> },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
