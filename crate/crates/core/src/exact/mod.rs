//! Exact scalar arithmetic and dense linear algebra over `Q` or `F_p`.
//!
//! Shared by all algebraic modules: row reduction, kernels, and the subspace
//! lattice (sum, intersection, membership) with canonical RREF bases.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{
    unit_vector, vec_add, vec_is_zero, vec_scale, vec_sub, vec_tensor, LinMap, Matrix,
};
pub use scalar::{Field, Scalar};
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
    #[error("scalar belongs to a different field")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected:?}, got {got:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
}
