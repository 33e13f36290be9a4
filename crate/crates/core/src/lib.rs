//! Dense complex tensors with a row-mode / column-mode split, multiplied by
//! the Einstein product.
//!
//! A tensor in `C^{I1 x .. x IN x J1 x .. x JM}` is stored row-major over the
//! concatenated index tuple (last index fastest), which makes its storage
//! identical to the `prod(I) x prod(J)` matrix it acts as. Every algebraic
//! operation here (products, conjugate transposes, SVD, Moore-Penrose
//! inverses) is computed through that correspondence.
//!
//! The [`rol`] module evaluates the equivalent characterizations of the
//! reverse-order law `(A * B)^+ = B^+ * A^+` and searches random families of
//! pairs for disagreements between them.

pub mod cli;
pub mod error;
pub mod io;
pub mod pinv;
pub mod policy;
pub mod random;
pub mod rol;
pub mod tensor;
pub mod unfolding;

pub use error::{Result, TensorError};
pub use num_complex::Complex64;
pub use pinv::{
    idempotent_factorization, identity_suite, min_norm_solve, penrose_residuals, pinv, pinv_scaled,
    pinv_sum, rank, tsvd, IdentityReport, PenroseResiduals, SvdFactors,
};
pub use policy::NumericPolicy;
pub use rol::{rol_report, Condition, RolReport};
pub use tensor::{Classification, DenseTensor, ModeShape};
pub use unfolding::{dematricize, matricize, matrix_svd, DenseMatrix, MatrixSvd};
