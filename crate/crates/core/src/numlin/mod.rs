//! Dense complex linear algebra used by every other module.

mod eigh;
mod matrix;
mod solve;

use thiserror::Error;

pub use eigh::{eigh, eigvalsh, EigenDecomp, HERMITIAN_TOL};
pub use matrix::{real_vec, vec_norm, vec_sub, DenseMatrix, C64, ONE, ZERO};
pub use solve::{cholesky, op_norm_euclid, pencil_eigvalsh, solve, solve_lower, solve_lower_adjoint, PIVOT_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not Hermitian (relative defect {relative_defect:.3e})")]
    NonHermitian { relative_defect: f64 },
    #[error("eigenvalue iteration did not converge for index {index} after {sweeps} sweeps")]
    ConvergenceFailure { index: usize, sweeps: usize },
    #[error("matrix is singular: pivot {pivot:.3e} at column {index}")]
    Singular { pivot: f64, index: usize },
    #[error("matrix is not positive definite: pivot {pivot:.3e} at column {index}")]
    NotPositiveDefinite { index: usize, pivot: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
}
