//! Exact computations with graded quotients of polynomial rings by quadrics
//! over a prime field: Hilbert functions, Betti tables, Poincaré series and
//! rates, together with a harness that compares them against closed forms.

pub mod ff_linalg;
pub mod graded;
pub mod harness;
pub mod resolution;
pub mod series;

pub use ff_linalg::{Echelon, LinalgError, PrimeField, PrimeFieldMatrix};
