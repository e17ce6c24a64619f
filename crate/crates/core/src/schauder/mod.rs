//! Schauder frame pairs in `R^d` with a `p`-norm (`p ∈ {1, 2, ∞}`): the
//! projection constant, the minimal-space norm, and the perturbation
//! certificates with an explicitly constructed new dual.

mod certify;
mod pair;

pub use certify::{
    perturbed_functionals, thm31_certificate, thm33_certificate, thm34_certificate, thm34_vectors,
};
pub use pair::{
    min_norm, projection_constant, schauder_excess, MinNormProfile, PNormSpace, SchauderFramePair,
    RECONSTRUCTION_TOL,
};
