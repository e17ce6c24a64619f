//! Dense small-matrix kernels: symmetric eigendecomposition, singular values,
//! rank and spans, linear solves, and exact `p → p` operator norms for
//! `p ∈ {1, 2, ∞}`.
//!
//! Everything here is pure and works on owned [`Matrix`] values, so results
//! can be shared freely across threads.

mod eigen;
mod matrix;
mod norms;
mod solve;
mod svd;

pub use eigen::{sym_eig, Spectrum, JACOBI_MAX_SWEEPS, JACOBI_OFF_TOL, SYMMETRY_TOL};
pub use matrix::{dot, norm2, sub_vec, Matrix};
pub use norms::{op_norm, op_norm_p, PNorm};
pub use solve::{inverse, solve};
pub use svd::{orthonormal_span, projector, rank, singular_values, svd, Svd, RANK_TOL};
