//! Matricization: the product-preserving bijection between tensors split as
//! `(I modes) x (J modes)` and `prod(I) x prod(J)` matrices, and the matrix
//! SVD that runs on the image.

pub(crate) mod matrix;
mod svd;

pub use matrix::DenseMatrix;
pub use svd::{matrix_svd, MatrixSvd, MAX_SWEEPS};

use crate::error::{Result, TensorError};
use crate::tensor::{DenseTensor, ModeShape};

/// Matrix image of `a`: `M[r, c] = a[row tuple r, column tuple c]`.
pub fn matricize(a: &DenseTensor) -> DenseMatrix {
    let shape = a.shape();
    DenseMatrix::new(shape.row_count(), shape.col_count(), a.entries().to_vec())
        .expect("tensor invariants imply a valid matrix")
}

/// Inverse of [`matricize`] for the given mode split.
pub fn dematricize(m: &DenseMatrix, shape: &ModeShape) -> Result<DenseTensor> {
    if m.rows() != shape.row_count() || m.cols() != shape.col_count() {
        return Err(TensorError::MatrixShapeMismatch {
            rows: m.rows(),
            cols: m.cols(),
            shape: shape.clone(),
            expected_rows: shape.row_count(),
            expected_cols: shape.col_count(),
        });
    }
    DenseTensor::new(shape.clone(), m.data().to_vec())
}
