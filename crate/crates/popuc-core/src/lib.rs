//! Construction of CMV matrices from Verblunsky-type parameter arrays,
//! zeros of the associated paraorthogonal polynomials on the unit circle,
//! and mechanical verification of circular interlacing and rank-one
//! perturbation identities on arbitrary and randomized inputs.
//!
//! The crate is organized as:
//! - [`linalg`]: dense complex kernels (LU, Hermitian Jacobi, a Cayley-based
//!   unitary eigensolver used as the independent zeros oracle);
//! - [`params`] and [`cmv`]: the parameter arrays and matrix constructions;
//! - [`popuc`]: polynomial evaluation, the pseudo-reflection recursion, and
//!   phase-winding zero localization;
//! - [`interlace`]: the circular-interlacing decision procedure and the
//!   theorem-level verifiers built on it;
//! - [`rank_one`]: rank-one multiplicative perturbation checks (adjugate
//!   spectral formula, characteristic-polynomial identities, direct sums).
//!
//! All functions are pure over immutable inputs and deterministic given any
//! seeds, so values can be shared or sent across threads freely.

pub mod circle;
pub mod cmv;
pub mod error;
pub mod interlace;
pub mod linalg;
pub mod params;
pub mod popuc;
pub mod rank_one;
pub mod tol;

pub use circle::{CirclePoint, CircularPointSet};
pub use cmv::{build_cmv, build_factors, gauge_matrices, partition, theta_block, CmvMatrix};
pub use error::{Error, Result};
pub use params::ParameterArray;
pub use popuc::{
    gamma, popuc_eval, pseudo_reflection, schur_complement_reduce, zeros, SpectralDecomposition,
};
