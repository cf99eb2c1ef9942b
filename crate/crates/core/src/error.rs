//! Error type shared by every module of the crate.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building machines, states, or metrics.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A matrix (or pair of matrices) has the wrong shape for the requested
    /// operation.
    #[error("dimension mismatch: {context} (got {rows}x{cols})")]
    DimensionMismatch {
        context: &'static str,
        rows: usize,
        cols: usize,
    },

    /// A matrix required to be Hermitian deviates from its own adjoint by
    /// more than the tolerance.
    #[error("matrix is not Hermitian (max entrywise deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    /// A matrix required to be positive semidefinite has a significantly
    /// negative eigenvalue.
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    /// A state vector does not have unit norm.
    #[error("vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    /// A density operator does not have unit trace.
    #[error("density operator trace must be 1 (got {trace})")]
    TraceNotOne { trace: f64 },

    /// The machine parameter lies outside the admissible open interval.
    #[error("machine parameter lambda must lie in (-1, 1), got {lambda}")]
    LambdaOutOfRange { lambda: f64 },

    /// A squared amplitude lies outside [0, 1].
    #[error("alpha^2 must lie in [0, 1], got {alpha_sq}")]
    AlphaSqOutOfRange { alpha_sq: f64 },

    /// A NaN or infinity was about to enter a matrix.
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// A subsystem shape is empty, has a zero factor, or disagrees with the
    /// matrix it describes.
    #[error("invalid subsystem shape: {0}")]
    InvalidShape(String),

    /// Catch-all for argument validation (bad brackets, grids, indices, …).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
