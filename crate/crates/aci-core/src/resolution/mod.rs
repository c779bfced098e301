//! Graded Betti tables: Koszul homology over Q, the explicit resolution of
//! k over a quadric hypersurface, and a minimal syzygy engine over any
//! graded quotient ring.

mod bar;
mod betti;
mod complex;
mod hypersurface;
mod pieces;
mod predicates;
mod syzygy;
mod transfer;

pub use bar::{residue_betti_by_bar, residue_betti_by_bar_with};
pub use betti::{BettiTable, Regularity};
pub use complex::{
    complex_homology_betti, divided_power_complex, koszul_complex, lex_subsets, LinearComplex,
    LinearEntry, WedgeSign,
};
pub use hypersurface::{
    betti_over_hypersurface, build_hypersurface_resolution, build_hypersurface_resolution_with,
    koszul_betti, koszul_betti_pieces, linear_factors, square_zero, HypersurfaceResolution,
    SurjectivityStep,
};
pub use pieces::ModulePieces;
pub use predicates::{
    betti_from_hilbert_strand, euler_check, euler_window, golod_hypothesis_check, GolodMode,
    GolodReport, GolodViolation, GOLOD_MIN_STEPS,
};
pub use transfer::{betti_over_complete_intersection, KoszulRetract, TransferredComplex};
pub use syzygy::{
    minimal_syzygy_betti, minimal_syzygy_betti_with, GradedModulePresentation, SyzygyOptions,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("Betti table is empty")]
    EmptyTable,
    #[error("hypersurface equation must be a quadric, got degree {0}")]
    NotQuadric(usize),
    #[error("hypersurface equation is zero")]
    ZeroHypersurface,
    #[error("resolution holds degrees up to {have}, need {need}")]
    ResolutionTooShort { have: usize, need: usize },
    #[error("module pieces are only known up to degree {cutoff}")]
    WindowOverflow { cutoff: usize },
    #[error("dense {rows}×{cols} matrix needs {bytes} bytes, over the limit of {limit}")]
    ResourceLimit { rows: usize, cols: usize, bytes: usize, limit: usize },
    #[error("relation of degree {degree} has the wrong length")]
    BadRelation { degree: usize },
    #[error("non-minimal step {step} in degree {degree}: a differential entry is a unit")]
    NonMinimal { step: usize, degree: usize },
    #[error("window covers {max_i} homological steps, need at least {need}")]
    WindowTooSmall { max_i: usize, need: usize },
    #[error("recurrence gives β_{{{k},{k}+{a}}} = {value} < 0: inconsistent inputs")]
    InconsistentStrands { k: usize, a: usize, value: i128 },
    #[error("alternating sum in degree {degree} is {lhs}, Hilbert function gives {rhs}")]
    EulerMismatch { degree: usize, lhs: i128, rhs: u64 },
    #[error("ideal has {count} linear relations; the bar route needs them in degree at least 2")]
    LinearRelations { count: usize },
    #[error("kernel dimension disagrees with exactness at step {step}, degree {degree}")]
    Inexact { step: usize, degree: usize },
}
