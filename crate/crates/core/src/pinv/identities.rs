//! Identities of the Moore-Penrose inverse and the constructions built on
//! them: Gram-operator inverses, orthogonal sums, idempotent
//! factorization and minimum-norm solves.

use std::collections::BTreeMap;

use serde::Serialize;

use super::pinv;
use crate::error::{Result, TensorError};
use crate::policy::{rel_diff, rel_zero, NumericPolicy};
use crate::tensor::DenseTensor;

/// Residuals of every identity checked by [`identity_suite`], keyed by name,
/// plus the normal and EP flags.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub residuals: BTreeMap<&'static str, f64>,
    pub normal_residual: f64,
    pub ep_residual: f64,
    pub normal: bool,
    pub ep: bool,
}

impl IdentityReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }

    pub fn all_hold(&self, policy: &NumericPolicy) -> bool {
        self.max_residual() <= policy.eq_tol
    }
}

/// Evaluates the standard identity set for `A`:
///
/// * `a1`, `a2`: `A* = A+ A A* = A* A A+`
/// * `b1`, `b2`: `A = A A* (A*)+ = (A*)+ A* A`
/// * `c1`, `c2`: `A+ = (A* A)+ A* = A* (A A*)+`
/// * `d1`, `d2`: `(A* A)+ = A+ (A*)+`, `(A A*)+ = (A*)+ A+`
/// * `e1`, `e2`: `(A* A)+ = A+ (A A*)+ A = A* (A A*)+ (A*)+`
/// * `f1`, `f2`: `A+ A = A* A (A* A)+ = (A* A)+ A* A`
///
/// `A+` is computed once and `(A*)+` is taken as `(A+)*`; the two Gram
/// inverses get their own SVDs.
pub fn identity_suite(a: &DenseTensor, policy: &NumericPolicy) -> Result<IdentityReport> {
    let ad = pinv(a, policy)?;
    let ah = a.conj_transpose();
    let ahd = ad.conj_transpose();
    let gram_col = ah.mul(a)?;
    let gram_row = a.mul(&ah)?;
    let gram_col_d = pinv(&gram_col, policy)?;
    let gram_row_d = pinv(&gram_row, policy)?;
    let proj_col = ad.mul(a)?;

    let mut r = BTreeMap::new();
    r.insert("a1", rel_diff(&ah, &proj_col.mul(&ah)?));
    r.insert("a2", rel_diff(&ah, &gram_col.mul(&ad)?));
    r.insert("b1", rel_diff(a, &gram_row.mul(&ahd)?));
    r.insert("b2", rel_diff(a, &ahd.mul(&gram_col)?));
    r.insert("c1", rel_diff(&ad, &gram_col_d.mul(&ah)?));
    r.insert("c2", rel_diff(&ad, &ah.mul(&gram_row_d)?));
    r.insert("d1", rel_diff(&gram_col_d, &ad.mul(&ahd)?));
    r.insert("d2", rel_diff(&gram_row_d, &ahd.mul(&ad)?));
    r.insert("e1", rel_diff(&gram_col_d, &ad.mul(&gram_row_d)?.mul(a)?));
    r.insert(
        "e2",
        rel_diff(&gram_col_d, &ah.mul(&gram_row_d)?.mul(&ahd)?),
    );
    r.insert("f1", rel_diff(&proj_col, &gram_col.mul(&gram_col_d)?));
    r.insert("f2", rel_diff(&proj_col, &gram_col_d.mul(&gram_col)?));

    let (normal_residual, ep_residual) = if a.shape().is_square() {
        (
            rel_diff(&gram_row, &gram_col),
            rel_diff(&a.mul(&ad)?, &proj_col),
        )
    } else {
        (f64::INFINITY, f64::INFINITY)
    };
    Ok(IdentityReport {
        residuals: r,
        normal_residual,
        ep_residual,
        normal: normal_residual <= policy.eq_tol,
        ep: ep_residual <= policy.eq_tol,
    })
}

/// `sum pinv(A_i)`, valid when the parts are pairwise orthogonal in the
/// sense `A_i A_j* = O` and `A_i* A_j = O` for `i != j`; the result then
/// equals `pinv(sum A_i)`.
pub fn pinv_sum(parts: &[DenseTensor], policy: &NumericPolicy) -> Result<DenseTensor> {
    let first = parts
        .first()
        .ok_or_else(|| TensorError::InvalidArgument("pinv_sum needs at least one part".into()))?;
    for p in &parts[1..] {
        if p.shape() != first.shape() {
            return Err(TensorError::ShapeMismatch {
                left: first.shape().clone(),
                right: p.shape().clone(),
            });
        }
    }
    for (i, ai) in parts.iter().enumerate() {
        for (j, aj) in parts.iter().enumerate().skip(i + 1) {
            let scale = ai.frobenius_norm() * aj.frobenius_norm();
            let residual = rel_zero(&ai.mul(&aj.conj_transpose())?, scale)
                .max(rel_zero(&ai.conj_transpose().mul(aj)?, scale));
            if residual > policy.eq_tol {
                return Err(TensorError::NotOrthogonal {
                    first: i,
                    second: j,
                    residual,
                });
            }
        }
    }
    let mut total = pinv(first, policy)?;
    for p in &parts[1..] {
        total = total.add(&pinv(p, policy)?)?;
    }
    Ok(total)
}

/// For idempotent `C`, returns the Hermitian idempotents `(C C+, C+ C)`.
/// With `(A, B)` the returned pair, `pinv(B * A) = C` and `A * C * B = C`.
pub fn idempotent_factorization(
    c: &DenseTensor,
    policy: &NumericPolicy,
) -> Result<(DenseTensor, DenseTensor)> {
    if !c.shape().is_square() {
        return Err(TensorError::NotSquare(c.shape().clone()));
    }
    let residual = rel_diff(&c.mul(c)?, c);
    if residual > policy.eq_tol {
        return Err(TensorError::NotIdempotent { residual });
    }
    let cd = pinv(c, policy)?;
    Ok((c.mul(&cd)?, cd.mul(c)?))
}

/// Minimum-norm least-squares solution `X = A+ * B` of `A * X = B`.
pub fn min_norm_solve(
    a: &DenseTensor,
    b: &DenseTensor,
    policy: &NumericPolicy,
) -> Result<DenseTensor> {
    if a.shape().row_dims() != b.shape().row_dims() {
        return Err(TensorError::ShapeMismatch {
            left: a.shape().clone(),
            right: b.shape().clone(),
        });
    }
    pinv(a, policy)?.mul(b)
}
