//! Exact dense linear algebra over prime fields.

mod echelon;
mod field;
mod matrix;
mod row_echelon;

pub use echelon::Echelon;
pub use field::PrimeField;
pub use matrix::PrimeFieldMatrix;
pub use row_echelon::RowEchelon;

pub(crate) use echelon::reduce_slice_with;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("ACI_DEFAULT_PRIME is not an integer: {0:?}")]
    BadPrimeVariable(String),
    #[error("rows have different lengths")]
    Ragged,
    #[error("shape mismatch: {left:?} against {right:?}")]
    Shape { left: (usize, usize), right: (usize, usize) },
}
