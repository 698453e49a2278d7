//! Exact scalar arithmetic and sparse linear algebra over the Gaussian
//! rationals Q(i).

mod linalg;
mod scalar;
mod sparse;

use thiserror::Error;

pub use linalg::{cokernel_projection, kernel_basis, kernel_matrix, rank, rank_on_kernel};
pub use scalar::{scalar_arithmetic, Scalar, ScalarOp};
pub use sparse::{BlockBuilder, SparseMatrix, SparseRow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("invalid scalar {text:?}: {reason}")]
    ScalarSyntax { text: String, reason: String },
}

/// `a * b` where the caller has already checked shapes.
pub(crate) fn compose(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    a.mat_mul(b).expect("composable shapes")
}
