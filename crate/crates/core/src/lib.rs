//! Generalized resolvent convergence for operators on varying Hilbert spaces,
//! realized on discretized Sturm–Liouville problems.
//!
//! * [`numlin`] — dense Hermitian eigensolver, LU, Cholesky.
//! * [`wspace`] — weighted grid spaces and embeddings `J: H → H_n`.
//! * [`selfadj`] — self-adjoint operators, functional calculus, projections.
//! * [`sturm`] — coefficient expressions, discretization, families.
//! * [`conv`] — distances, certificates and spectral diagnostics.
//! * [`expcli`] — scenario files, sweeps, CSV output and verdicts.

pub mod conv;
pub mod error;
pub mod expcli;
pub mod numlin;
pub mod selfadj;
pub mod sturm;
pub mod wspace;

pub use error::{Error, Result};
