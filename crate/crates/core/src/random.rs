//! Random tensor families used by the counterexample search and the
//! property tests. All generators draw from a caller-supplied RNG so runs
//! are reproducible from a seed.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::tensor::{DenseTensor, ModeShape};
use crate::unfolding::{dematricize, matricize, matrix_svd, DenseMatrix};

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Entries i.i.d. standard complex normal.
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R, shape: &ModeShape) -> DenseTensor {
    let entries = (0..shape.len()).map(|_| complex_normal(rng)).collect();
    DenseTensor::from_parts_unchecked(shape.clone(), entries)
}

/// Entries i.i.d. standard real normal.
pub fn real_gaussian<R: Rng + ?Sized>(rng: &mut R, shape: &ModeShape) -> DenseTensor {
    let entries = (0..shape.len())
        .map(|_| Complex64::new(rng.sample(StandardNormal), 0.0))
        .collect();
    DenseTensor::from_parts_unchecked(shape.clone(), entries)
}

/// Gaussian tensor with all but the leading `rank` singular values zeroed.
pub fn with_rank<R: Rng + ?Sized>(
    rng: &mut R,
    shape: &ModeShape,
    rank: usize,
) -> Result<DenseTensor> {
    let g = gaussian(rng, shape);
    let svd = matrix_svd(&matricize(&g))?;
    let sigma: Vec<f64> = svd
        .sigma
        .iter()
        .enumerate()
        .map(|(k, &s)| if k < rank { s } else { 0.0 })
        .collect();
    let truncated = super::unfolding::MatrixSvd { sigma, ..svd };
    dematricize(&truncated.reconstruct(), shape)
}

/// Unitary tensor on `dims x dims`, the left singular factor of a Gaussian.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> Result<DenseTensor> {
    let shape = ModeShape::square(dims)?;
    let g = gaussian(rng, &shape);
    dematricize(&matrix_svd(&matricize(&g))?.u, &shape)
}

/// `U diag(values) U*` for a random unitary `U`; Hermitian when the values
/// are real, normal in general.
pub fn normal_with_spectrum<R: Rng + ?Sized>(
    rng: &mut R,
    dims: &[usize],
    values: &[Complex64],
) -> Result<DenseTensor> {
    let u = unitary(rng, dims)?;
    let d = DenseTensor::diagonal_from(dims, dims, values)?;
    u.mul(&d)?.mul(&u.conj_transpose())
}

/// `I + 0.1 R`, redrawn until its smallest singular value is at least 0.5.
pub fn well_conditioned_invertible<R: Rng + ?Sized>(
    rng: &mut R,
    dims: &[usize],
) -> Result<DenseTensor> {
    let id = DenseTensor::identity(dims)?;
    loop {
        let r = gaussian(rng, id.shape());
        let candidate =
            crate::tensor::add_scale(Complex64::new(1.0, 0.0), &id, Complex64::new(0.1, 0.0), &r)?;
        let sigma = matrix_svd(&matricize(&candidate))?.sigma;
        if sigma.last().is_some_and(|&s| s >= 0.5) {
            return Ok(candidate);
        }
    }
}

/// Permutation of the flattened index range as a (real, unitary) tensor.
pub fn permutation<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> Result<DenseTensor> {
    let shape = ModeShape::square(dims)?;
    let n = shape.row_count();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let mut m = DenseMatrix::zeros(n, n);
    for (r, &c) in perm.iter().enumerate() {
        m.set(r, c, Complex64::new(1.0, 0.0));
    }
    dematricize(&m, &shape)
}
