//! Truncated bivariate series over the integers and the closed forms built
//! on them: Hilbert functions, the ρ and γ sequences, Poincaré series and
//! rates.

mod biseries;
mod combinatorics;
pub mod hilbert;
mod poincare;
mod rate;
mod sequences;
mod tables;

pub use biseries::BiSeries;
pub use combinatorics::{binomial, binomial_usize, catalan};
pub use hilbert::{hilb_a, hilb_a_value, hilb_p, hilb_p_value, hilb_r, hilb_r_value};
pub use poincare::{
    a_linear_poincare, golod_compose, koszul_series, linear_strand_a_over_p, poincare_k_over_a,
    poincare_k_over_r, r_over_p_from_a, two_strand_poincare, DEFAULT_SERIES_WINDOW,
};
pub use rate::{rate_of_series, RateReport};
pub use sequences::{gamma, rho, SequenceName, SequenceTable};
pub use tables::tilde_betti_tables_q;

use num_bigint::BigInt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series windows differ")]
    WindowMismatch,
    #[error("constant term {0} is not a unit")]
    NotInvertible(BigInt),
    #[error("series is not divisible by t^{power}")]
    NotDivisible { power: usize },
    #[error("negative coefficient {value} at t^{i} u^{j}")]
    NegativeCoefficient { i: usize, j: usize, value: BigInt },
    #[error("formula needs n >= {min}, got {n}")]
    TooFewVariables { n: usize, min: usize },
    #[error("module series must have constant term 1")]
    ConstantTermNotOne,
    #[error("no homological degree i >= 2 with a nonzero coefficient in range")]
    EmptyRange,
}
