//! Quantitative evaluation of time-series motif discovery.
//!
//! Discovered motif sets are compared to ground-truth motif sets by
//! matching individual motifs on overlap rate, matching whole sets by
//! linear sum assignment, and deriving precision, recall, and F1 from
//! the resulting matching matrix. The crate also implements the two
//! pre-existing comparison metrics (correctness and score), a benchmark
//! generator that concatenates labeled classification instances into
//! annotated series, a random-walk baseline with a stationarity-test
//! solver, and ranking analysis across metrics and methods.

mod assignment;

pub mod analysis;
pub mod benchgen;
pub mod error;
pub mod matching;
pub mod prom;
pub mod reference;
pub mod rwbaseline;
pub mod types;

pub use error::{Error, Result};
pub use types::{
    Averaging, CollectionKind, EvalConfig, MotifSet, MotifSetCollection, OverlapViolation,
    Segment, TimeSeries,
};
