//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: asymmetry {residual:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("basis element {index} is not unitary (residual {residual:.3e})")]
    NotUnitary { index: usize, residual: f64 },

    #[error("eigendecomposition did not converge after {sweeps} sweeps")]
    EigConvergence { sweeps: usize },

    #[error("invalid density matrix: {reason}")]
    InvalidDensity { reason: String },

    #[error("invalid state vector: {reason}")]
    InvalidState { reason: String },

    #[error("unknown game `{name}` (expected pure, diagonal, quantum, random:<seed>, or a file path)")]
    UnknownGame { name: String },

    #[error("invalid game file: {reason}")]
    InvalidGameFile { reason: String },

    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },

    #[error("solver did not converge: best duality gap {best_gap:.6e} after {iterations} iterations")]
    SolverNonConvergence { best_gap: f64, iterations: usize },

    #[error("certificate check failed: residual {residual:.6e} exceeds tolerance {tolerance:.6e}")]
    CertificateFailure { residual: f64, tolerance: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
