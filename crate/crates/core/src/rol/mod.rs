//! Reverse-order-law diagnostics: for a pair `(A, B)` every known
//! characterization of `(A * B)+ = B+ * A+` is evaluated independently so
//! that they can be cross-checked against each other.

mod fuzz;
mod shortcuts;

use serde::Serialize;

use crate::error::{Result, TensorError};
use crate::pinv::{pinv_scaled, pinv_with_norm};
use crate::policy::{rel_diff, NumericPolicy};
use crate::tensor::{kronecker, DenseTensor};

pub use fuzz::{fuzz_family, fuzz_search, Family, FamilyCounts, FuzzSummary, Violation};
pub use shortcuts::{
    projector_commute_report, sandwich_pinv, unitary_rol, zero_equivalence, CommuteReport,
    ZeroEquivalence,
};

/// A residual together with its verdict at the policy tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Condition {
    pub residual: f64,
    pub holds: bool,
}

impl Condition {
    pub fn new(residual: f64, tol: f64) -> Self {
        Self {
            residual,
            holds: residual <= tol,
        }
    }
}

/// Residuals of the reverse-order law and its equivalent conditions.
///
/// With `A+` etc. the Moore-Penrose inverses:
///
/// * `direct`: `(A B)+ = B+ A+`
/// * `absorb_left`: `A+ A B B* A* = B B* A*`
/// * `absorb_right`: `B B+ A* A B = A* A B`
/// * `herm1`, `herm2`: `A+ A B B*` and `A* A B B+` are Hermitian
/// * `gram_product`: `A+ A B B* A* A B B+ = B B* A* A`
/// * `proj_left`: `A+ A B = B (A B)+ A B`
/// * `proj_right`: `B B+ A* = A* A B (A B)+`
/// * `commute`: `A+ A` commutes with `B B+` (necessary, not sufficient)
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RolReport {
    pub direct: Condition,
    pub absorb_left: Condition,
    pub absorb_right: Condition,
    pub herm1: Condition,
    pub herm2: Condition,
    pub gram_product: Condition,
    pub proj_left: Condition,
    pub proj_right: Condition,
    pub commute: Condition,
}

impl RolReport {
    /// Verdicts of the five groups that are each equivalent to `direct`.
    pub fn groups(&self) -> [(&'static str, bool); 5] {
        [
            ("direct", self.direct.holds),
            ("absorb", self.absorb_left.holds && self.absorb_right.holds),
            ("hermitian", self.herm1.holds && self.herm2.holds),
            ("gram-product", self.gram_product.holds),
            ("projectors", self.proj_left.holds && self.proj_right.holds),
        ]
    }

    /// Name of the first group whose verdict differs from `direct`.
    pub fn first_disagreement(&self) -> Option<&'static str> {
        let d = self.direct.holds;
        self.groups()
            .into_iter()
            .find(|&(_, v)| v != d)
            .map(|(name, _)| name)
    }

    pub fn equivalences_agree(&self) -> bool {
        self.first_disagreement().is_none()
    }

    /// `direct => commute`.
    pub fn sufficiency_holds(&self) -> bool {
        !self.direct.holds || self.commute.holds
    }

    pub fn holds(&self) -> bool {
        self.direct.holds
    }
}

/// Evaluates every condition of [`RolReport`] from `pinv(A)`, `pinv(B)`
/// and `pinv(A * B)`, the last with its cutoff scaled by `|A|_2 |B|_2`.
pub fn rol_report(a: &DenseTensor, b: &DenseTensor, policy: &NumericPolicy) -> Result<RolReport> {
    if a.shape().col_dims() != b.shape().row_dims() {
        return Err(TensorError::ContractionMismatch {
            left: a.shape().clone(),
            right: b.shape().clone(),
        });
    }
    let tol = policy.eq_tol;
    let cond = |x: &DenseTensor, y: &DenseTensor| Condition::new(rel_diff(x, y), tol);
    let hermitian = |x: &DenseTensor| Condition::new(rel_diff(x, &x.conj_transpose()), tol);

    let (ad, norm_a) = pinv_with_norm(a, 0.0, policy)?;
    let (bd, norm_b) = pinv_with_norm(b, 0.0, policy)?;
    let ab = a.mul(b)?;
    let abd = pinv_scaled(&ab, norm_a * norm_b, policy)?;
    let ah = a.conj_transpose();
    let bh = b.conj_transpose();

    let pa = ad.mul(a)?; // A+ A
    let pb = b.mul(&bd)?; // B B+
    let gram_a = ah.mul(a)?; // A* A
    let gram_b = b.mul(&bh)?; // B B*
    let bbh_ah = gram_b.mul(&ah)?;
    let aha_b = gram_a.mul(b)?;
    let x1 = pa.mul(&gram_b)?; // A+ A B B*
    let x2 = gram_a.mul(&pb)?; // A* A B B+

    Ok(RolReport {
        direct: cond(&abd, &bd.mul(&ad)?),
        absorb_left: cond(&pa.mul(&bbh_ah)?, &bbh_ah),
        absorb_right: cond(&pb.mul(&aha_b)?, &aha_b),
        herm1: hermitian(&x1),
        herm2: hermitian(&x2),
        gram_product: cond(&x1.mul(&x2)?, &gram_b.mul(&gram_a)?),
        proj_left: cond(&pa.mul(b)?, &b.mul(&abd)?.mul(&ab)?),
        proj_right: cond(&pb.mul(&ah)?, &aha_b.mul(&abd)?),
        commute: cond(&pa.mul(&pb)?, &pb.mul(&pa)?),
    })
}

/// A pair whose projectors `A+ A` and `B B+` commute while the
/// reverse-order law fails.
///
/// Found by exhaustive search over 2x2 integer matrices with entries in
/// `{-1, 0, 1}`: `A = [[1, 1], [1, 0]]` is invertible, so `A+ A = I`
/// commutes with anything, and `B = [[1, 0], [0, 0]]` gives
/// `(A B)+ = [[1/2, 1/2], [0, 0]]` against `B+ A+ = [[0, 1], [0, 0]]`.
/// Both factors are lifted to `[2,2] x [2,2]` tensors by a Kronecker
/// product with the 2x2 identity, which preserves every property involved.
pub fn converse_counterexample() -> (DenseTensor, DenseTensor) {
    let a = DenseTensor::from_real(&[2], &[2], &[1., 1., 1., 0.]).expect("valid");
    let b = DenseTensor::from_real(&[2], &[2], &[1., 0., 0., 0.]).expect("valid");
    let id = DenseTensor::identity(&[2]).expect("valid");
    (
        kronecker(&a, &id).expect("kronecker of valid tensors"),
        kronecker(&b, &id).expect("kronecker of valid tensors"),
    )
}
