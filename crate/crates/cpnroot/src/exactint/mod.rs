//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`], so values such as `p^{p^{n-j}}`
//! never overflow. The main entry points are [`hnf`], [`kernel_lattice`],
//! [`lattice_index`] and [`solve_integral`].

mod kernel;
mod lattice;
mod matrix;
pub(crate) mod modular;
mod normal_form;
mod rational;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use kernel::kernel_lattice;
pub use lattice::{lattice_index, Index, Lattice};
pub use matrix::IntMatrix;
pub use modular::is_prime_u64;
pub use normal_form::{determinant, hnf, smith, Smith};
pub use rational::{rational_reconstruction, solve_integral, Solution};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactIntError {
    #[error("row {row} has length {found}, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
    #[error("shapes {left:?} and {right:?} are incompatible")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("lattices live in ambient ranks {left} and {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("the first lattice is not contained in the second")]
    NotASublattice,
    #[error("the target is not in the rational span of the basis")]
    NoSolution,
    #[error("the basis rows are linearly dependent")]
    DependentRows,
}

/// `base^exp` for a small base and exponent, as a big integer.
pub fn pow_u(base: u64, exp: u64) -> BigInt {
    num_traits::pow::pow(BigInt::from(base), usize::try_from(exp).expect("exponent fits in usize"))
}

/// Converts a slice of machine integers into big integers.
pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
