//! Exact matrices over ℕ, ℤ and prime fields.

mod fp;
mod json;
mod matrix;
mod snf;

pub use fp::{inv_mod, is_prime, FpMatrix};
pub use json::{
    int_matrix_from_json, int_matrix_to_json, nat_matrix_from_json, nat_matrix_to_json, ScalarDomain, TaggedMatrix,
};
pub use matrix::{IntMatrix, Matrix, NatMatrix};
pub use snf::{
    cokernel_decomposition, cokernel_from_smith, determinant, invert_int, smith_normal_form, smith_normal_form_with,
    CokernelDecomposition, PivotRule, Smith,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("dimension mismatch: {left:?} against {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("matrix is not square: {0:?}")]
    NotSquare((usize, usize)),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("mixed prime fields F_{0} and F_{1}")]
    FieldMismatch(u64, u64),
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("bad matrix json: {0}")]
    Json(String),
}
