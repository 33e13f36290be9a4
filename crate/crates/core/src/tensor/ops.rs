use num_complex::Complex64;

use super::{DenseTensor, ModeShape};
use crate::error::{Result, TensorError};
use crate::unfolding::matrix::gemm;

/// Einstein product: contracts the column modes of `a` with the row modes
/// of `b`.
///
/// `(a * b)[i.., j..] = sum_k a[i.., k..] * b[k.., j..]`, with result shape
/// `a.row_dims x b.col_dims`.
pub fn einstein_product(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    if a.shape().col_dims() != b.shape().row_dims() {
        return Err(TensorError::ContractionMismatch {
            left: a.shape().clone(),
            right: b.shape().clone(),
        });
    }
    let (m, k, n) = (
        a.shape().row_count(),
        a.shape().col_count(),
        b.shape().col_count(),
    );
    let shape = ModeShape::new(a.shape().row_dims(), b.shape().col_dims())?;
    let entries = gemm(a.entries(), b.entries(), m, k, n);
    Ok(DenseTensor::from_parts_unchecked(shape, entries))
}

/// Entrywise `alpha * a + beta * b`.
pub fn add_scale(
    alpha: Complex64,
    a: &DenseTensor,
    beta: Complex64,
    b: &DenseTensor,
) -> Result<DenseTensor> {
    if a.shape() != b.shape() {
        return Err(TensorError::ShapeMismatch {
            left: a.shape().clone(),
            right: b.shape().clone(),
        });
    }
    let entries = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(&x, &y)| alpha * x + beta * y)
        .collect();
    DenseTensor::new(a.shape().clone(), entries)
}

/// Sum of the entries `a[i.., i..]`; defined for square splits only.
pub fn trace(a: &DenseTensor) -> Result<Complex64> {
    if !a.shape().is_square() {
        return Err(TensorError::NotSquare(a.shape().clone()));
    }
    Ok(a.diagonal().into_iter().sum())
}

/// Kronecker product with concatenated mode lists:
/// rows `a.rows ++ b.rows`, columns `a.cols ++ b.cols`, entry
/// `a[i.., j..] * b[k.., l..]` at `(i.., k.., j.., l..)`.
pub fn kronecker(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    let rows: Vec<usize> = a
        .shape()
        .row_dims()
        .iter()
        .chain(b.shape().row_dims())
        .copied()
        .collect();
    let cols: Vec<usize> = a
        .shape()
        .col_dims()
        .iter()
        .chain(b.shape().col_dims())
        .copied()
        .collect();
    let shape = ModeShape::new(&rows, &cols)?;
    let (ar, ac) = (a.shape().row_count(), a.shape().col_count());
    let (br, bc) = (b.shape().row_count(), b.shape().col_count());
    let mut entries = Vec::with_capacity(shape.len());
    for ra in 0..ar {
        for rb in 0..br {
            for ca in 0..ac {
                let x = a.at(ra, ca);
                entries.extend((0..bc).map(|cb| x * b.at(rb, cb)));
            }
        }
    }
    DenseTensor::new(shape, entries)
}

/// `<a, b> = tr(a* * b)`, evaluated as `sum conj(a) b` over identical shapes.
pub fn inner_product(a: &DenseTensor, b: &DenseTensor) -> Result<Complex64> {
    if a.shape() != b.shape() {
        return Err(TensorError::ShapeMismatch {
            left: a.shape().clone(),
            right: b.shape().clone(),
        });
    }
    Ok(a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| x.conj() * y)
        .sum())
}
