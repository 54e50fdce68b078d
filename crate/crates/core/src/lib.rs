//! Zero-dilation indices, rank-k numerical-range membership and
//! numerical-range geometry for dense complex matrices.
//!
//! The generic engine in [`dilation`] minimizes the inertia profile
//! θ ↦ i_{≥0}(Re(e^{iθ}A)) by brute force. The structured families in
//! [`companion`] (generalized block companion matrices) and [`kms`]
//! (block upper triangular KMS matrices) come with closed-form evaluators
//! that are checked against that engine. [`numrange`] samples the boundary
//! of the numerical range and evaluates Kippenhahn polynomials.

pub mod companion;
pub mod dilation;
pub mod eigen;
pub mod error;
pub mod inertia;
pub mod kms;
pub mod matrix;
pub mod numrange;
pub mod svd;

pub use num_complex::Complex64;

pub use dilation::{approach_bound, igeq_at, lambda_k_contains_zero, zdi, ZdiResult};
pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen};
pub use error::{Error, Result};
pub use inertia::{inertia, Inertia};
pub use matrix::{direct_sum, jordan_block, kron, schur_complement, ComplexMatrix};
pub use svd::{rank_nullity, singular_values};
