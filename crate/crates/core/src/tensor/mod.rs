//! Dense complex tensors with a row/column mode split.

mod classify;
mod ops;

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Result, TensorError};

pub use classify::{classify, ClassResiduals, Classification, NOT_SQUARE};
pub use ops::{add_scale, einstein_product, inner_product, kronecker, trace};

/// Row dimensions `I1..IN` and column dimensions `J1..JM` of a tensor.
///
/// Either side may be empty, in which case it contributes a count of 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ModeShape {
    row_dims: Vec<usize>,
    col_dims: Vec<usize>,
}

impl ModeShape {
    pub fn new(row_dims: &[usize], col_dims: &[usize]) -> Result<Self> {
        for (side, dims) in [("row", row_dims), ("column", col_dims)] {
            if let Some(index) = dims.iter().position(|&d| d == 0) {
                return Err(TensorError::ZeroDimension { side, index });
            }
        }
        let shape = Self {
            row_dims: row_dims.to_vec(),
            col_dims: col_dims.to_vec(),
        };
        if checked_product(row_dims)
            .and_then(|r| checked_product(col_dims).and_then(|c| r.checked_mul(c)))
            .is_none()
        {
            return Err(TensorError::InvalidArgument(format!(
                "shape {shape} has too many entries"
            )));
        }
        Ok(shape)
    }

    /// Square split with `dims` on both sides.
    pub fn square(dims: &[usize]) -> Result<Self> {
        Self::new(dims, dims)
    }

    pub fn row_dims(&self) -> &[usize] {
        &self.row_dims
    }

    pub fn col_dims(&self) -> &[usize] {
        &self.col_dims
    }

    pub fn row_count(&self) -> usize {
        self.row_dims.iter().product()
    }

    pub fn col_count(&self) -> usize {
        self.col_dims.iter().product()
    }

    pub fn len(&self) -> usize {
        self.row_count() * self.col_count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_square(&self) -> bool {
        self.row_dims == self.col_dims
    }

    /// `dims x dims`; an empty `dims` gives the 1x1 scalar shape.
    pub(crate) fn square_of(dims: &[usize]) -> Self {
        Self {
            row_dims: dims.to_vec(),
            col_dims: dims.to_vec(),
        }
    }

    /// Shape with row and column modes exchanged.
    pub fn transposed(&self) -> Self {
        Self {
            row_dims: self.col_dims.clone(),
            col_dims: self.row_dims.clone(),
        }
    }

    /// Flat offset of a full index tuple `(i1..iN, j1..jM)`.
    pub fn offset(&self, index: &[usize]) -> Option<usize> {
        let dims = self.row_dims.iter().chain(&self.col_dims);
        if index.len() != self.row_dims.len() + self.col_dims.len() {
            return None;
        }
        let mut offset = 0usize;
        for (&i, &d) in index.iter().zip(dims) {
            if i >= d {
                return None;
            }
            offset = offset * d + i;
        }
        Some(offset)
    }
}

fn checked_product(dims: &[usize]) -> Option<usize> {
    dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d))
}

impl fmt::Display for ModeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}x{:?}", self.row_dims, self.col_dims)
    }
}

/// A complex tensor stored row-major over `(i1..iN, j1..jM)`, last index
/// fastest. The flat buffer doubles as the row-major `row_count x col_count`
/// matrix the tensor represents.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    shape: ModeShape,
    entries: Vec<Complex64>,
}

impl DenseTensor {
    pub fn new(shape: ModeShape, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != shape.len() {
            return Err(TensorError::LengthMismatch {
                expected: shape.len(),
                got: entries.len(),
            });
        }
        if let Some(index) = entries
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(TensorError::NonFinite { index });
        }
        Ok(Self { shape, entries })
    }

    /// Real entries embedded with zero imaginary parts.
    pub fn from_real(row_dims: &[usize], col_dims: &[usize], values: &[f64]) -> Result<Self> {
        let shape = ModeShape::new(row_dims, col_dims)?;
        Self::new(
            shape,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    /// Builds a tensor by evaluating `f` at every full index tuple.
    pub fn from_fn(shape: ModeShape, mut f: impl FnMut(&[usize]) -> Complex64) -> Result<Self> {
        let dims: Vec<usize> = shape
            .row_dims()
            .iter()
            .chain(shape.col_dims())
            .copied()
            .collect();
        let mut index = vec![0usize; dims.len()];
        let mut entries = Vec::with_capacity(shape.len());
        for _ in 0..shape.len() {
            entries.push(f(&index));
            for axis in (0..dims.len()).rev() {
                index[axis] += 1;
                if index[axis] < dims[axis] {
                    break;
                }
                index[axis] = 0;
            }
        }
        Self::new(shape, entries)
    }

    pub fn zeros(shape: ModeShape) -> Self {
        let entries = vec![Complex64::new(0.0, 0.0); shape.len()];
        Self { shape, entries }
    }

    /// Unit tensor with `dims` on both sides: entry `prod_k delta(i_k, j_k)`.
    pub fn identity(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(TensorError::InvalidArgument(
                "identity needs at least one mode".into(),
            ));
        }
        let shape = ModeShape::square(dims)?;
        let n = shape.row_count();
        let mut t = Self::zeros(shape);
        for k in 0..n {
            t.entries[k * n + k] = Complex64::new(1.0, 0.0);
        }
        Ok(t)
    }

    /// Diagonal tensor whose k-th flattened diagonal entry `(k, k)` is
    /// `values[k]`, `k < min(row_count, col_count)`.
    pub fn diagonal_from(
        row_dims: &[usize],
        col_dims: &[usize],
        values: &[Complex64],
    ) -> Result<Self> {
        let shape = ModeShape::new(row_dims, col_dims)?;
        let (rows, cols) = (shape.row_count(), shape.col_count());
        let k = rows.min(cols);
        if values.len() != k {
            return Err(TensorError::LengthMismatch {
                expected: k,
                got: values.len(),
            });
        }
        let mut t = Self::zeros(shape);
        for (i, &v) in values.iter().enumerate() {
            t.entries[i * cols + i] = v;
        }
        Self::new(t.shape, t.entries)
    }

    pub fn shape(&self) -> &ModeShape {
        &self.shape
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    pub fn get(&self, index: &[usize]) -> Option<Complex64> {
        self.shape.offset(index).map(|o| self.entries[o])
    }

    /// Entry at flattened row `r`, flattened column `c`.
    pub fn at(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.shape.col_count() + c]
    }

    /// Flattened diagonal `(k, k)` for `k < min(row_count, col_count)`.
    pub fn diagonal(&self) -> Vec<Complex64> {
        let cols = self.shape.col_count();
        (0..self.shape.row_count().min(cols))
            .map(|k| self.entries[k * cols + k])
            .collect()
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// `A*`: modes swapped, entries conjugated.
    pub fn conj_transpose(&self) -> Self {
        self.transpose_map(|z| z.conj())
    }

    /// `A^T`: modes swapped, entries unchanged.
    pub fn transpose(&self) -> Self {
        self.transpose_map(|z| z)
    }

    fn transpose_map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let (rows, cols) = (self.shape.row_count(), self.shape.col_count());
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..cols {
            for r in 0..rows {
                entries.push(f(self.entries[r * cols + c]));
            }
        }
        Self {
            shape: self.shape.transposed(),
            entries,
        }
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        Self {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|&z| alpha * z).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Same entries viewed under a different split with the same counts.
    pub fn reshaped(&self, shape: ModeShape) -> Result<Self> {
        Self::new(shape, self.entries.clone())
    }

    /// `self * rhs`; see [`einstein_product`].
    pub fn mul(&self, rhs: &DenseTensor) -> Result<Self> {
        einstein_product(self, rhs)
    }

    /// `self - rhs`.
    pub fn sub(&self, rhs: &DenseTensor) -> Result<Self> {
        add_scale(
            Complex64::new(1.0, 0.0),
            self,
            Complex64::new(-1.0, 0.0),
            rhs,
        )
    }

    /// `self + rhs`.
    pub fn add(&self, rhs: &DenseTensor) -> Result<Self> {
        add_scale(
            Complex64::new(1.0, 0.0),
            self,
            Complex64::new(1.0, 0.0),
            rhs,
        )
    }

    pub(crate) fn from_parts_unchecked(shape: ModeShape, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(shape.len(), entries.len());
        Self { shape, entries }
    }
}
