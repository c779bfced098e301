//! Graded quotient rings of k[x_1..x_n] built degree by degree.

mod family;
mod monomial;
mod ring;

pub use family::{
    colon_ideal_ring, ell, sample_general_family, sample_general_family_with, QuadricSet, RingFamily, Variant,
    HYPERSURFACE_CUTOFF_CAP, SAMPLE_RETRY_BOUND,
};
pub use monomial::{degree, monomial_basis, Monomial, MonomialTable};
pub use ring::{build_ring, Form, GeneratorDegrees, GradedQuotientRing, PieceMethod};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GradedError {
    #[error("generator is not homogeneous")]
    Inhomogeneous,
    #[error("empty polynomial has no degree")]
    EmptyPolynomial,
    #[error("monomial has {got} exponents, ring has {expected} variables")]
    WrongVariableCount { expected: usize, got: usize },
    #[error("degree {degree} is beyond the cutoff {cutoff}")]
    DegreeOutOfRange { degree: usize, cutoff: usize },
    #[error("cutoff {cutoff} is below a generator of degree {generator_degree}")]
    CutoffTooSmall { generator_degree: usize, cutoff: usize },
    #[error("prime {p} must exceed the number of variables {n}")]
    PrimeTooSmall { p: u32, n: usize },
    #[error("need at least two variables, got {0}")]
    TooFewVariables(usize),
    #[error("socle may be truncated: ring does not vanish at cutoff {cutoff}")]
    TruncatedSocle { cutoff: usize },
    #[error("genericity checks failed after {attempts} draw(s): {reason}")]
    GenericityFailure { attempts: usize, reason: String },
}
