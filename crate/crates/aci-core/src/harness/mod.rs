//! Verification suite: builds a family of rings, computes its invariants and
//! checks them against the closed forms, with reports in text and JSON.

mod checks;
mod config;
mod report;
mod suite;
mod tables;

pub use checks::{CheckId, CheckSpec, ClaimKind, REGISTRY};
pub use config::{ExperimentConfig, ResidueRoute, Windows};
pub use report::{CheckResult, CheckStatus, VerificationReport};
pub use suite::{
    betti_table_to_series, build_family, residue_betti, run_suite, series_to_table,
    BuiltFamily,
};
pub use tables::{
    compare_tables, emit_betti_table, parse_betti_json, CompareMode, OutputFormat, TableComparison,
    TableMeta, TableViolation,
};

use crate::graded::GradedError;
use crate::resolution::ResolutionError;
use crate::series::SeriesError;
use crate::LinalgError;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("tables share no entries on their common window")]
    DisjointWindows,
    #[error("malformed document: {0}")]
    Document(String),
}
