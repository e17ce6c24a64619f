use serde::Serialize;

use super::frames::SpanSpectrum;
use super::VectorFamily;
use crate::error::{Error, Result};
use crate::numerics::{svd, Matrix};

/// Directional gap `δ(K, L) ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct GapValue(f64);

impl GapValue {
    pub fn new(delta: f64) -> Result<Self> {
        if !(0.0..=1.0 + 1e-12).contains(&delta) {
            return Err(Error::InvalidParameter(format!("gap must lie in [0, 1], got {delta}")));
        }
        Ok(Self(delta.min(1.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Gap together with the geometry of the projection `P_L` restricted to `K`.
#[derive(Debug, Clone, Serialize)]
pub struct GapAnalysis {
    pub delta: GapValue,
    pub dim_k: usize,
    pub dim_l: usize,
    /// Smallest singular value of `P_L U_K` (`None` when `K = {0}`).
    pub sigma_min_projection: Option<f64>,
    /// `rank(P_L U_K)`.
    pub projection_rank: usize,
}

/// `δ(K, L)` for `K = span(k_fam)`, `L = span(l_fam)`.
pub fn gap(k_fam: &VectorFamily, l_fam: &VectorFamily) -> Result<GapValue> {
    Ok(gap_analysis(k_fam, l_fam)?.delta)
}

/// `δ = σ_max((I − P_L) U_K)` with `U_K` an orthonormal basis of `K`; 0 when `K = {0}`.
pub fn gap_analysis(k_fam: &VectorFamily, l_fam: &VectorFamily) -> Result<GapAnalysis> {
    if k_fam.dim() != l_fam.dim() {
        return Err(Error::DimensionMismatch { left: k_fam.dim(), right: l_fam.dim() });
    }
    let d = k_fam.dim();
    let k = SpanSpectrum::of(k_fam)?;
    let l = SpanSpectrum::of(l_fam)?;
    let dim_k = k.rank();
    let dim_l = l.rank();
    if dim_k == 0 {
        return Ok(GapAnalysis {
            delta: GapValue(0.0),
            dim_k,
            dim_l,
            sigma_min_projection: None,
            projection_rank: 0,
        });
    }
    let p_l = l.projector();
    let projected = p_l.matmul(&k.basis)?;
    let residual = Matrix::identity(d).sub(&p_l)?.matmul(&k.basis)?;
    let delta = svd(&residual)?.max();
    let proj_svd = svd(&projected)?;
    let sigma_min = proj_svd.singular_values.last().copied().unwrap_or(0.0);
    // rank relative to the unit scale of the orthonormal basis, not to σ_max
    let projection_rank = proj_svd.singular_values.iter().filter(|&&s| s > 1e-10).count();
    Ok(GapAnalysis {
        delta: GapValue::new(delta)?,
        dim_k,
        dim_l,
        sigma_min_projection: Some(sigma_min),
        projection_rank,
    })
}
