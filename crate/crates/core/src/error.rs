use thiserror::Error;

use crate::numlin::LinalgError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("weights must be positive and finite (index {index}: {value})")]
    InvalidWeight { index: usize, value: f64 },

    #[error("embedding is not invertible: ‖JJ* − I‖ = {jjstar_defect:.3e} ≥ 1")]
    NotInvertible { jjstar_defect: f64 },

    #[error("spectral parameter {z} is within {distance:.3e} of the spectrum (guard {guard:.3e})")]
    SpectrumProximity { z: num_complex::Complex64, distance: f64, guard: f64 },

    #[error("function value at eigenvalue {eigenvalue} is not finite")]
    NonFiniteFunctionValue { eigenvalue: f64 },

    #[error("eigenvalue {eigenvalue} lies within {guard:.3e} of window endpoint {endpoint}")]
    EndpointCollision { eigenvalue: f64, endpoint: f64, guard: f64 },

    #[error("invalid spectral window ({lo}, {hi})")]
    InvalidWindow { lo: f64, hi: f64 },

    #[error("time must be nonnegative for the heat semigroup, got {0}")]
    NegativeTime(f64),

    #[error("spectral parameter must be non-real, got {0}")]
    RealSpectralParameter(num_complex::Complex64),

    #[error("coefficient {name} is not positive at x = {x} (value {value})")]
    CoefficientSignViolation { name: &'static str, x: f64, value: f64 },

    #[error("factorization requires q ≡ 0, found q({x}) = {value}")]
    NonZeroPotential { x: f64, value: f64 },

    #[error("spaces live on different grids")]
    GridMismatch,

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("operators live on different spaces: {0}")]
    SpaceMismatch(&'static str),

    #[error("expression error: {0}")]
    Expr(#[from] crate::sturm::ExprError),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("schema error for key `{key}`: {reason}")]
    Schema { key: String, reason: String },

    #[error("n = {n}: {source}")]
    AtIndex {
        n: u32,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
