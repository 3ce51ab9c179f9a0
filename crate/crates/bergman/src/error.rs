use thiserror::Error;

/// Errors reported by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// Two points (or a point and a matrix) of different complex dimensions
    /// were combined.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    /// An operation that needs an interior point received one on (or within
    /// 1e-14 of) the unit sphere.
    #[error("point lies on or too close to the boundary (|z| = {0})")]
    BoundaryPoint(f64),

    /// A parameter fell outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A construction produced no output (e.g. a packing at a radius where
    /// nothing fits).
    #[error("empty construction: {0}")]
    EmptyConstruction(String),

    /// A linear solve or an iteration could not be completed.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// The Neumann iteration was requested but the estimated deviation of
    /// the node matrix from the identity is not a contraction.
    #[error("Neumann iteration refused: estimated deviation {0} >= 1 (increase m or split the sequence)")]
    NotContractive(f64),

    /// Input/output failure when reading or writing serialized objects.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed JSON input.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
