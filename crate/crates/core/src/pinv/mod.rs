//! Tensor SVD and the Moore-Penrose inverse under the Einstein product.

mod identities;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::policy::{rel_diff, NumericPolicy};
use crate::tensor::{DenseTensor, ModeShape};
use crate::unfolding::{dematricize, matricize, matrix_svd, DenseMatrix};

pub use identities::{
    idempotent_factorization, identity_suite, min_norm_solve, pinv_sum, IdentityReport,
};

/// `A = u * d * v*` with unitary `u` (I x I), `v` (J x J) and `d` (I x J)
/// diagonal, nonnegative, nonincreasing along the flattened diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdFactors {
    pub u: DenseTensor,
    pub d: DenseTensor,
    pub v: DenseTensor,
}

impl SvdFactors {
    pub fn singular_values(&self) -> Vec<f64> {
        self.d.diagonal().iter().map(|z| z.re).collect()
    }

    /// `u * d * v*`.
    pub fn reconstruct(&self) -> Result<DenseTensor> {
        self.u.mul(&self.d)?.mul(&self.v.conj_transpose())
    }
}

/// SVD of a tensor, computed on its matricization.
pub fn tsvd(a: &DenseTensor) -> Result<SvdFactors> {
    let shape = a.shape();
    let svd = matrix_svd(&matricize(a))?;
    let u = dematricize(&svd.u, &ModeShape::square_of(shape.row_dims()))?;
    let v = dematricize(&svd.v, &ModeShape::square_of(shape.col_dims()))?;
    let sigma: Vec<Complex64> = svd.sigma.iter().map(|&s| Complex64::new(s, 0.0)).collect();
    let d = DenseTensor::diagonal_from(shape.row_dims(), shape.col_dims(), &sigma)?;
    Ok(SvdFactors { u, d, v })
}

/// Moore-Penrose inverse `v * d^+ * u*`.
///
/// Singular values `s >= rank_tol * s_max` are inverted, the rest are
/// treated as zero. The zero tensor maps to the zero tensor of transposed
/// shape.
pub fn pinv(a: &DenseTensor, policy: &NumericPolicy) -> Result<DenseTensor> {
    Ok(pinv_with_norm(a, 0.0, policy)?.0)
}

/// [`pinv`] with the cutoff measured against `max(s_max, scale)`.
///
/// For a computed product `A * B` pass `|A|_2 |B|_2`: rounding leaves
/// singular values of order `eps |A|_2 |B|_2` where the exact product has
/// zeros, and a cutoff relative to `s_max` alone would invert them when the
/// whole product is noise.
pub fn pinv_scaled(a: &DenseTensor, scale: f64, policy: &NumericPolicy) -> Result<DenseTensor> {
    Ok(pinv_with_norm(a, scale, policy)?.0)
}

/// The inverse together with the spectral norm `s_max` of `a`.
pub(crate) fn pinv_with_norm(
    a: &DenseTensor,
    scale: f64,
    policy: &NumericPolicy,
) -> Result<(DenseTensor, f64)> {
    let out_shape = a.shape().transposed();
    let svd = matrix_svd(&matricize(a))?;
    let s_max = svd.sigma.first().copied().unwrap_or(0.0);
    let (m, n) = (svd.u.rows(), svd.v.rows());
    let mut x = DenseMatrix::zeros(n, m);
    if s_max > 0.0 {
        let cutoff = policy.rank_tol * s_max.max(scale);
        for (k, &s) in svd.sigma.iter().enumerate() {
            if s < cutoff || s == 0.0 {
                break;
            }
            let inv = 1.0 / s;
            for r in 0..n {
                let left = svd.v.get(r, k) * inv;
                for c in 0..m {
                    let cur = x.get(r, c);
                    x.set(r, c, cur + left * svd.u.get(c, k).conj());
                }
            }
        }
    }
    Ok((dematricize(&x, &out_shape)?, s_max))
}

/// Numerical rank under the same cutoff as [`pinv`].
pub fn rank(a: &DenseTensor, policy: &NumericPolicy) -> Result<usize> {
    let sigma = matrix_svd(&matricize(a))?.sigma;
    let s_max = sigma.first().copied().unwrap_or(0.0);
    if s_max == 0.0 {
        return Ok(0);
    }
    Ok(sigma
        .iter()
        .filter(|&&s| s >= policy.rank_tol * s_max)
        .count())
}

/// Relative residuals of the four Penrose equations for a candidate `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PenroseResiduals {
    /// `A X A = A`
    pub r1: f64,
    /// `X A X = X`
    pub r2: f64,
    /// `(A X)* = A X`
    pub r3: f64,
    /// `(X A)* = X A`
    pub r4: f64,
}

impl PenroseResiduals {
    pub fn max(&self) -> f64 {
        self.r1.max(self.r2).max(self.r3).max(self.r4)
    }

    pub fn holds(&self, policy: &NumericPolicy) -> bool {
        self.max() <= policy.eq_tol
    }
}

pub fn penrose_residuals(a: &DenseTensor, x: &DenseTensor) -> Result<PenroseResiduals> {
    let ax = a.mul(x)?;
    let xa = x.mul(a)?;
    Ok(PenroseResiduals {
        r1: rel_diff(&ax.mul(a)?, a),
        r2: rel_diff(&xa.mul(x)?, x),
        r3: rel_diff(&ax.conj_transpose(), &ax),
        r4: rel_diff(&xa.conj_transpose(), &xa),
    })
}
