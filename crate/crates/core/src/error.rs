use thiserror::Error;

use crate::tensor::ModeShape;

pub type Result<T> = std::result::Result<T, TensorError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("dimension {index} of {side} modes is zero; every dimension must be >= 1")]
    ZeroDimension { side: &'static str, index: usize },

    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("entry {index} is not finite")]
    NonFinite { index: usize },

    #[error("cannot contract {left} with {right}: column modes of the left factor must equal row modes of the right factor")]
    ContractionMismatch { left: ModeShape, right: ModeShape },

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: ModeShape, right: ModeShape },

    #[error("matrix is {rows}x{cols}, shape {shape} needs {expected_rows}x{expected_cols}")]
    MatrixShapeMismatch {
        rows: usize,
        cols: usize,
        shape: ModeShape,
        expected_rows: usize,
        expected_cols: usize,
    },

    #[error("operation needs equal row and column modes, got {0}")]
    NotSquare(ModeShape),

    #[error("SVD did not converge after {sweeps} Jacobi sweeps")]
    SvdNoConvergence { sweeps: usize },

    #[error("parts {first} and {second} are not mutually orthogonal (residual {residual:.3e})")]
    NotOrthogonal {
        first: usize,
        second: usize,
        residual: f64,
    },

    #[error("tensor is not idempotent (residual {residual:.3e})")]
    NotIdempotent { residual: f64 },

    #[error("{0} factor is not unitary")]
    NotUnitary(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
