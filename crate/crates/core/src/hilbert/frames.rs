use serde::{Deserialize, Serialize};

use super::VectorFamily;
use crate::error::{Error, Result};
use crate::numerics::{op_norm, projector, svd, sym_eig, Matrix, PNorm, RANK_TOL};

/// Relative spectral threshold for the frame and Riesz verdicts.
pub const SPAN_TOL: f64 = 1e-10;

/// Optimal lower/upper constants of a two-sided quadratic inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

impl FrameBounds {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite()) || lower < 0.0 || lower > upper {
            return Err(Error::InvalidParameter(format!(
                "frame bounds need 0 <= lower <= upper (got {lower}, {upper})"
            )));
        }
        Ok(Self { lower, upper })
    }

    /// Builds bounds from computed extremes, absorbing round-off below zero.
    pub(crate) fn from_extremes(lower: f64, upper: f64) -> Self {
        let upper = upper.max(0.0);
        Self { lower: lower.clamp(0.0, upper), upper }
    }

    /// `self.lower ≤ inner.lower` and `inner.upper ≤ self.upper`, up to `slack`.
    pub fn encloses(&self, inner: &FrameBounds, slack: f64) -> bool {
        self.lower <= inner.lower + slack && inner.upper <= self.upper + slack
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameCheck {
    pub bounds: FrameBounds,
    pub is_frame: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RieszCheck {
    pub bounds: FrameBounds,
    pub is_riesz: bool,
}

/// Left singular structure of the synthesis operator restricted to its range.
pub(crate) struct SpanSpectrum {
    /// Orthonormal basis of `span(fam)` (d x r).
    pub basis: Matrix,
    /// Nonzero singular values of the synthesis operator, descending.
    pub sigmas: Vec<f64>,
}

impl SpanSpectrum {
    pub fn of(fam: &VectorFamily) -> Result<Self> {
        let s = svd(&fam.synthesis())?;
        let r = s.rank(RANK_TOL);
        let mut basis = Matrix::zeros(fam.dim(), r);
        for j in 0..r {
            basis.set_col(j, &s.u.col(j));
        }
        Ok(Self { basis, sigmas: s.singular_values[..r].to_vec() })
    }

    pub fn rank(&self) -> usize {
        self.sigmas.len()
    }

    pub fn projector(&self) -> Matrix {
        projector(&self.basis)
    }

    /// Inverse of the frame operator on the span, zero on its complement.
    pub fn frame_operator_pinv(&self) -> Matrix {
        let d = self.basis.rows();
        let mut out = Matrix::zeros(d, d);
        for (j, &s) in self.sigmas.iter().enumerate() {
            let u = self.basis.col(j);
            out.add_outer(1.0 / (s * s), &u, &u);
        }
        out
    }
}

/// The synthesis (pre-frame) operator `T c = Σ c_k f_k` as a `d x N` matrix.
pub fn synthesis(fam: &VectorFamily) -> Matrix {
    fam.synthesis()
}

/// `S = Σ_k f_k f_kᵀ = T Tᵀ`.
pub fn frame_operator(fam: &VectorFamily) -> Matrix {
    fam.synthesis().gram_rows()
}

/// Optimal frame bounds `(λ_min(S), λ_max(S))`; a frame iff the family spans `R^d`.
pub fn frame_bounds(fam: &VectorFamily) -> Result<FrameCheck> {
    let sp = sym_eig(&frame_operator(fam))?;
    let bounds = FrameBounds::from_extremes(sp.min(), sp.max());
    let is_frame = bounds.upper > 0.0 && sp.min() > SPAN_TOL * sp.max();
    Ok(FrameCheck { bounds, is_frame })
}

/// Frame bounds of the family as a frame for its own span.
pub fn frame_sequence_bounds(fam: &VectorFamily) -> Result<FrameBounds> {
    if fam.is_all_zero() {
        return Err(Error::ZeroFamily);
    }
    let sp = SpanSpectrum::of(fam)?;
    let hi = sp.sigmas[0];
    let lo = *sp.sigmas.last().expect("nonzero family has rank >= 1");
    Ok(FrameBounds::from_extremes(lo * lo, hi * hi))
}

/// Canonical dual `{S⁻¹ f_k}` with the inverse taken on `span(fam)`.
pub fn canonical_dual(fam: &VectorFamily) -> Result<VectorFamily> {
    let pinv = SpanSpectrum::of(fam)?.frame_operator_pinv();
    fam.transform(&pinv)
}

/// `‖Σ_k g_k f_kᵀ − P_span(f)‖₂`: zero exactly when `g` reconstructs every
/// vector of `span(f)` through `x = Σ ⟨x, g_k⟩ f_k`.
pub fn verify_dual_pair(f: &VectorFamily, g: &VectorFamily) -> Result<f64> {
    f.check_compatible(g)?;
    let d = f.dim();
    let mut mixed = Matrix::zeros(d, d);
    for (fk, gk) in f.vectors().iter().zip(g.vectors()) {
        mixed.add_outer(1.0, gk, fk);
    }
    let p = SpanSpectrum::of(f)?.projector();
    op_norm(&mixed.sub(&p)?, PNorm::Two)
}

/// Optimal Riesz bounds `(σ_N(T)², σ_1(T)²)`; the lower one is 0 when `N > d`.
pub fn riesz_bounds(fam: &VectorFamily) -> Result<RieszCheck> {
    let s = svd(&fam.synthesis())?;
    let upper = s.max() * s.max();
    let lower = if fam.len() > fam.dim() {
        0.0
    } else {
        let smin = *s.singular_values.last().expect("non-empty family");
        smin * smin
    };
    let bounds = FrameBounds::from_extremes(lower, upper);
    let is_riesz = upper > 0.0 && bounds.lower > SPAN_TOL * upper;
    Ok(RieszCheck { bounds, is_riesz })
}

/// `N − rank(T)`: how many vectors are redundant.
pub fn excess(fam: &VectorFamily) -> Result<usize> {
    Ok(fam.len() - svd(&fam.synthesis())?.rank(RANK_TOL))
}

/// Smallest `M` with `Σ |⟨x, u_k⟩|² ≤ M ‖x‖²`, i.e. `λ_max` of the frame operator.
pub fn bessel_bound(fam: &VectorFamily) -> Result<f64> {
    Ok(sym_eig(&frame_operator(fam))?.max().max(0.0))
}

/// Dimension of `span(fam)` at the default rank tolerance.
pub fn span_rank(fam: &VectorFamily) -> Result<usize> {
    Ok(svd(&fam.synthesis())?.rank(RANK_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(d: usize, v: &[&[f64]]) -> VectorFamily {
        VectorFamily::new(d, v.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn onb_is_tight() {
        let onb = VectorFamily::standard_basis(2);
        let fb = frame_bounds(&onb).unwrap();
        assert_eq!(fb.bounds, FrameBounds { lower: 1.0, upper: 1.0 });
        assert!(fb.is_frame);
        let rb = riesz_bounds(&VectorFamily::standard_basis(3)).unwrap();
        assert_eq!(rb.bounds, FrameBounds { lower: 1.0, upper: 1.0 });
        assert!(rb.is_riesz);
    }

    #[test]
    fn repeated_vector() {
        let f = fam(2, &[&[1.0, 0.0], &[1.0, 0.0]]);
        assert_eq!(frame_operator(&f), Matrix::diag(&[2.0, 0.0]));
        let fb = frame_bounds(&f).unwrap();
        assert!(!fb.is_frame);
        assert_eq!(fb.bounds.lower, 0.0);
        let rb = riesz_bounds(&f).unwrap();
        assert!(rb.bounds.lower < 1e-20);
        assert!(!rb.is_riesz);
    }

    #[test]
    fn sequence_bounds() {
        let f = fam(3, &[&[1.0, 0.0, 0.0]]);
        let b = frame_sequence_bounds(&f).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-15 && (b.upper - 1.0).abs() < 1e-15);
        let z = fam(2, &[&[0.0, 0.0]]);
        assert!(matches!(frame_sequence_bounds(&z), Err(Error::ZeroFamily)));
    }

    #[test]
    fn dual_pairs() {
        let onb = VectorFamily::standard_basis(2);
        assert_eq!(canonical_dual(&onb).unwrap(), onb);
        assert!(verify_dual_pair(&onb, &onb).unwrap() < 1e-15);
        let twice = onb.scaled(2.0);
        assert!((verify_dual_pair(&onb, &twice).unwrap() - 1.0).abs() < 1e-14);
        let short = fam(2, &[&[1.0, 0.0]]);
        assert!(matches!(verify_dual_pair(&onb, &short), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn excess_counts() {
        assert_eq!(excess(&VectorFamily::standard_basis(3)).unwrap(), 0);
        let extra = VectorFamily::standard_basis(3)
            .extended(&fam(3, &[&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]]))
            .unwrap();
        assert_eq!(excess(&extra).unwrap(), 2);
    }

    #[test]
    fn bessel() {
        assert_eq!(bessel_bound(&VectorFamily::standard_basis(3)).unwrap(), 1.0);
        assert_eq!(bessel_bound(&fam(2, &[&[2.0, 0.0]])).unwrap(), 4.0);
    }

    #[test]
    fn bounds_validation() {
        assert!(FrameBounds::new(2.0, 1.0).is_err());
        assert!(FrameBounds::new(-1.0, 1.0).is_err());
        let outer = FrameBounds::new(0.5, 2.0).unwrap();
        assert!(outer.encloses(&FrameBounds::new(1.0, 1.0).unwrap(), 0.0));
        assert!(!outer.encloses(&FrameBounds::new(0.4, 1.0).unwrap(), 1e-9));
    }
}
