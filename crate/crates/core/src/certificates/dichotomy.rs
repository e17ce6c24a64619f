use serde::Serialize;

use crate::error::{Error, Result};
use crate::gallery::TruncatedSeriesTrace;
use crate::hilbert::{span_rank, unit, VectorFamily};
use crate::numerics::{dot, norm2};

/// Explicit failure of the lower frame bound for an extension of `f` into an
/// orthogonal complement of dimension at least 2.
#[derive(Debug, Clone, Serialize)]
pub struct DichotomyReport {
    pub ambient_dim: usize,
    pub rank: usize,
    pub codim: usize,
    /// `0, f_1, 0, f_2, …`
    pub g: VectorFamily,
    /// `e_1, f_1, e_3/3, f_2, e_5/5, f_3, …` with `{e_j}` an orthonormal basis
    /// of the complement.
    pub h: VectorFamily,
    /// `r_n = Σ_k ⟨u_n, h_k⟩² / ‖u_n‖²` for `u_n = e_{2n−1}/(2n−1)`.
    pub ratios: Vec<f64>,
    /// Partial sums of `‖g_k − h_k‖²`, one term per complement witness.
    pub closeness: TruncatedSeriesTrace,
}

/// Orthonormal basis of `span(f)^⊥`, by Gram–Schmidt of the standard basis
/// against an orthonormal basis of the span (two passes for stability).
fn complement_basis(f: &VectorFamily, dim: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let push_if_new = |basis: &mut Vec<Vec<f64>>, mut v: Vec<f64>| {
        for _ in 0..2 {
            for b in basis.iter() {
                let c = dot(&v, b);
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let n = norm2(&v);
        if n > 1e-8 {
            basis.push(v.into_iter().map(|x| x / n).collect());
        }
    };
    for v in f.vectors() {
        let scale = norm2(v);
        if scale > 0.0 {
            push_if_new(&mut basis, v.iter().map(|x| x / scale).collect());
        }
    }
    let span_dim = basis.len();
    for j in 0..dim {
        push_if_new(&mut basis, unit(dim, j));
    }
    basis.split_off(span_dim)
}

/// Builds the interleaved extension and its witness ratios.
///
/// `f` may live in a smaller space than `ambient_dim`; it is zero-padded.
pub fn frame_extension_dichotomy(f: &VectorFamily, ambient_dim: usize) -> Result<DichotomyReport> {
    if f.dim() > ambient_dim {
        return Err(Error::DimensionMismatch { left: f.dim(), right: ambient_dim });
    }
    let padded = VectorFamily::new(
        ambient_dim,
        f.vectors()
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.resize(ambient_dim, 0.0);
                w
            })
            .collect(),
    )?;
    let rank = span_rank(&padded)?;
    let codim = ambient_dim - rank;
    if codim < 2 {
        return Err(Error::InsufficientComplement { codim });
    }
    let complement = complement_basis(&padded, ambient_dim);
    debug_assert_eq!(complement.len(), codim);

    // witnesses use the odd-numbered complement directions e_1, e_3, …
    let witnesses = codim.div_ceil(2);
    let slots = witnesses.max(padded.len());
    let zero = vec![0.0; ambient_dim];
    let mut g = Vec::with_capacity(2 * slots);
    let mut h = Vec::with_capacity(2 * slots);
    for i in 0..slots {
        let odd = 2 * i + 1;
        g.push(zero.clone());
        h.push(if i < witnesses {
            complement[2 * i].iter().map(|x| x / odd as f64).collect()
        } else {
            zero.clone()
        });
        let fi = padded.vectors().get(i).cloned().unwrap_or_else(|| zero.clone());
        g.push(fi.clone());
        h.push(fi);
    }
    let g = VectorFamily::new(ambient_dim, g)?;
    let h = VectorFamily::new(ambient_dim, h)?;

    let ratios = (0..witnesses)
        .map(|i| {
            let u: Vec<f64> = complement[2 * i].iter().map(|x| x / (2 * i + 1) as f64).collect();
            let energy: f64 = h.vectors().iter().map(|hk| dot(&u, hk).powi(2)).sum();
            energy / dot(&u, &u)
        })
        .collect();
    let terms: Vec<f64> = (0..witnesses)
        .map(|i| norm2(&h.vectors()[2 * i]).powi(2))
        .collect();
    let closeness = TruncatedSeriesTrace::against_target(&terms, None);

    Ok(DichotomyReport { ambient_dim, rank, codim, g, h, ratios, closeness })
}
