use serde::Serialize;

use super::trace::{harmonic, TruncatedSeriesTrace};
use crate::error::{Error, Result};
use crate::hilbert::{unit, VectorFamily};
use crate::numerics::{norm2, PNorm};
use crate::schauder::{PNormSpace, SchauderFramePair};

pub const EXAMPLE21_MAX_DEPTH: usize = 6;
pub const REMARK22_MAX_DEPTH: usize = 20;
pub const EXAMPLE31_MAX_DEPTH: usize = 40;

/// `Σ_{n>m} n^{−s}` for `s > 1`: exact terms up to a cut-off, then the
/// Euler–Maclaurin remainder.
pub fn zeta_tail(s: f64, m: usize) -> f64 {
    let cut = m.max(1000);
    let head: f64 = (m + 1..=cut).map(|n| (n as f64).powf(-s)).sum();
    let c = cut as f64;
    head + c.powf(1.0 - s) / (s - 1.0) - 0.5 * c.powf(-s) + s / 12.0 * c.powf(-s - 1.0)
}

/// Smallest `N ≥ 1` with `Σ_{n>N} n^{−s} < 1`.
pub fn minimal_offset(s: f64) -> usize {
    (1..).find(|&m| zeta_tail(s, m) < 1.0).expect("tail tends to 0")
}

fn check_depth(depth: usize, max: usize) -> Result<()> {
    if depth == 0 {
        return Err(Error::InvalidParameter("depth must be at least 1".into()));
    }
    if depth > max {
        return Err(Error::DepthTooLarge { depth, max });
    }
    Ok(())
}

/// A tight frame built from blocks of repeated scaled basis vectors, and the
/// perturbation that rescales the first vector of every block.
#[derive(Debug, Clone, Serialize)]
pub struct BlockExample {
    /// The offset `N` in the block scales.
    pub offset: usize,
    pub f: VectorFamily,
    pub h: VectorFamily,
    /// Canonical dual of `f`, equal to `f` since its frame operator is `I`.
    pub g: VectorFamily,
    pub block_sizes: Vec<usize>,
    /// Per-block partial sums of `‖f_k − h_k‖²`.
    pub lambda: TruncatedSeriesTrace,
    /// Per-block partial sums of `‖f_k − h_k‖‖g_k‖`.
    pub mu: TruncatedSeriesTrace,
}

/// Per-block sums of `‖f_k − h_k‖²` and `‖f_k − h_k‖‖g_k‖`, measured on the vectors.
fn block_terms(ex: (&VectorFamily, &VectorFamily, &VectorFamily), sizes: &[usize]) -> (Vec<f64>, Vec<f64>) {
    let (f, h, g) = ex;
    let mut lambda = Vec::with_capacity(sizes.len());
    let mut mu = Vec::with_capacity(sizes.len());
    let mut k = 0;
    for &size in sizes {
        let (mut l, mut m) = (0.0, 0.0);
        for i in k..k + size {
            let d = norm2(&crate::numerics::sub_vec(f.get(i), h.get(i)));
            l += d * d;
            m += d * norm2(g.get(i));
        }
        lambda.push(l);
        mu.push(m);
        k += size;
    }
    (lambda, mu)
}

/// Blocks `n = 1..=depth`: `c_n²` copies of `e_n / c_n`, the first one replaced
/// by `(t_n / c_n) e_n` in `h`.
fn block_example(
    depth: usize,
    scale: impl Fn(usize) -> usize,
    stretch: impl Fn(usize) -> f64,
) -> Result<(VectorFamily, VectorFamily, Vec<usize>)> {
    let mut f = Vec::new();
    let mut h = Vec::new();
    let mut sizes = Vec::with_capacity(depth);
    for n in 1..=depth {
        let c = scale(n) as f64;
        let copies = scale(n) * scale(n);
        let e = unit(depth, n - 1);
        let v: Vec<f64> = e.iter().map(|x| x / c).collect();
        for j in 0..copies {
            f.push(v.clone());
            h.push(if j == 0 { e.iter().map(|x| x * stretch(n) / c).collect() } else { v.clone() });
        }
        sizes.push(copies);
    }
    Ok((VectorFamily::new(depth, f)?, VectorFamily::new(depth, h)?, sizes))
}

/// `c_n = (n+N)²`, `k_n = c_n²` copies, `t_n = n^{3/2} + 1`, with `N` the least
/// integer for which `Σ_{n>N} 1/n² < 1`.
///
/// The `λ` series has terms `n³/(n+N)⁴`, compared against the harmonic series.
pub fn example21(depth: usize) -> Result<BlockExample> {
    check_depth(depth, EXAMPLE21_MAX_DEPTH)?;
    let offset = minimal_offset(2.0);
    let (f, h, block_sizes) = block_example(
        depth,
        |n| (n + offset) * (n + offset),
        |n| (n as f64).powf(1.5) + 1.0,
    )?;
    let g = f.clone();
    let (lt, mt) = block_terms((&f, &h, &g), &block_sizes);
    Ok(BlockExample {
        offset,
        lambda: TruncatedSeriesTrace::with_trend(&lt, harmonic, None),
        mu: TruncatedSeriesTrace::against_target(&mt, Some(1.0)),
        f,
        h,
        g,
        block_sizes,
    })
}

/// `c_n = n + 1`, `t_1 = 3`, `t_n = 2` otherwise. Here `λ ≥ 1 = A` from the
/// first block while `μ < 1`.
pub fn example_remark22(depth: usize) -> Result<BlockExample> {
    check_depth(depth, REMARK22_MAX_DEPTH)?;
    let (f, h, block_sizes) =
        block_example(depth, |n| n + 1, |n| if n == 1 { 3.0 } else { 2.0 })?;
    let g = f.clone();
    let (lt, mt) = block_terms((&f, &h, &g), &block_sizes);
    Ok(BlockExample {
        offset: 0,
        lambda: TruncatedSeriesTrace::against_target(&lt, Some(1.0)),
        mu: TruncatedSeriesTrace::against_target(&mt, Some(1.0)),
        f,
        h,
        g,
        block_sizes,
    })
}

/// `f = 0, e_2, 0, e_4, …` and `g = e_1, e_2, e_3/3, e_4, …` in `R^{2·depth}`.
#[derive(Debug, Clone, Serialize)]
pub struct InterleavedExample {
    pub f: VectorFamily,
    pub g: VectorFamily,
    /// `Σ_k ⟨u_n, g_k⟩² / ‖u_n‖²` for `u_n = e_{2n−1}/(2n−1)`.
    pub ratios: Vec<f64>,
    /// Partial sums of `‖f_k − g_k‖²`, one term per odd slot.
    pub closeness: TruncatedSeriesTrace,
}

pub fn example22(depth: usize) -> Result<InterleavedExample> {
    check_depth(depth, usize::MAX)?;
    let d = 2 * depth;
    let mut f = Vec::with_capacity(d);
    let mut g = Vec::with_capacity(d);
    for n in 1..=depth {
        let odd = 2 * n - 1;
        f.push(vec![0.0; d]);
        g.push(unit(d, odd - 1).iter().map(|x| x / odd as f64).collect());
        f.push(unit(d, odd));
        g.push(unit(d, odd));
    }
    let f = VectorFamily::new(d, f)?;
    let g = VectorFamily::new(d, g)?;
    let ratios = (1..=depth)
        .map(|n| {
            let odd = 2 * n - 1;
            let u: Vec<f64> = unit(d, odd - 1).iter().map(|x| x / odd as f64).collect();
            let energy: f64 = g.vectors().iter().map(|gk| crate::numerics::dot(&u, gk).powi(2)).sum();
            energy / crate::numerics::dot(&u, &u)
        })
        .collect();
    let terms: Vec<f64> = (0..depth)
        .map(|i| norm2(&crate::numerics::sub_vec(f.get(2 * i), g.get(2 * i))).powi(2))
        .collect();
    Ok(InterleavedExample {
        closeness: TruncatedSeriesTrace::with_trend(&terms, harmonic, None),
        f,
        g,
        ratios,
    })
}

/// Schauder frame `x_k = e_n/n`, `f_k = e_n`, each repeated `n` times, and the
/// perturbation `y_k = x_k + a_k e_1` with `a_k = (k+N)^{−3/2}`, `N` least with
/// `Σ_{n>N} n^{−3/2} < 1`.
#[derive(Debug, Clone, Serialize)]
pub struct RepeatedSchauderExample {
    pub offset: usize,
    pub pair: SchauderFramePair,
    pub y: Vec<Vec<f64>>,
    pub block_sizes: Vec<usize>,
    /// Per-block partial sums of `‖x_k − y_k‖‖f_k‖`.
    pub mu: TruncatedSeriesTrace,
    /// Per-block partial sums of `‖x_k − y_k‖/‖x_k‖`.
    pub lambda: TruncatedSeriesTrace,
}

pub fn example31(depth: usize) -> Result<RepeatedSchauderExample> {
    example31_in(depth, PNorm::Two)
}

/// [`example31`] in `R^depth` with the `p`-norm.
pub fn example31_in(depth: usize, p: PNorm) -> Result<RepeatedSchauderExample> {
    check_depth(depth, EXAMPLE31_MAX_DEPTH)?;
    let offset = minimal_offset(1.5);
    let space = PNormSpace::new(depth, p)?;
    let mut x = Vec::new();
    let mut f = Vec::new();
    let mut y = Vec::new();
    let mut block_sizes = Vec::with_capacity(depth);
    for n in 1..=depth {
        let e = unit(depth, n - 1);
        let xn: Vec<f64> = e.iter().map(|v| v / n as f64).collect();
        for _ in 0..n {
            let k = x.len() + 1;
            let a = ((k + offset) as f64).powf(-1.5);
            let mut yk = xn.clone();
            yk[0] += a;
            x.push(xn.clone());
            f.push(e.clone());
            y.push(yk);
        }
        block_sizes.push(n);
    }
    let pair = SchauderFramePair::new(space, x, f)?;

    let (mut mt, mut lt) = (Vec::with_capacity(depth), Vec::with_capacity(depth));
    let mut k = 0;
    for &size in &block_sizes {
        let (mut m, mut l) = (0.0, 0.0);
        let block = pair.x_vectors()[k..k + size].iter().zip(&pair.f_functionals()[k..k + size]);
        for ((xi, fi), yi) in block.zip(&y[k..k + size]) {
            let diff = space.norm(&crate::numerics::sub_vec(xi, yi));
            m += diff * space.dual_norm(fi);
            l += diff / space.norm(xi);
        }
        mt.push(m);
        lt.push(l);
        k += size;
    }
    Ok(RepeatedSchauderExample {
        offset,
        mu: TruncatedSeriesTrace::against_target(&mt, Some(1.0)),
        lambda: TruncatedSeriesTrace::with_trend(&lt, harmonic, None),
        pair,
        y,
        block_sizes,
    })
}

/// The lower bound `n² / (n(n+1)/2 + N)^{3/2}` for the `n`-th block of the
/// `λ` series of [`example31`].
pub fn example31_block_lower_bound(n: usize, offset: usize) -> f64 {
    let n = n as f64;
    n * n / (n * (n + 1.0) / 2.0 + offset as f64).powf(1.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::VerdictHint;
    use crate::hilbert::frame_bounds;

    #[test]
    fn tail_sums_match_direct_summation() {
        // ζ(2) = π²/6
        let direct = std::f64::consts::PI.powi(2) / 6.0 - 1.0;
        assert!((zeta_tail(2.0, 1) - direct).abs() < 1e-12);
        assert_eq!(minimal_offset(2.0), 1);
        // ζ(3/2) = 2.612375348685488…
        let z = 2.612_375_348_685_488;
        let head: f64 = (1..=4).map(|n| (n as f64).powf(-1.5)).sum();
        assert!((zeta_tail(1.5, 4) - (z - head)).abs() < 1e-10);
        assert_eq!(minimal_offset(1.5), 4);
        assert!(zeta_tail(1.5, 3) > 1.0);
    }

    #[test]
    fn example21_depth_one() {
        let ex = example21(1).unwrap();
        assert_eq!(ex.offset, 1);
        assert_eq!(ex.block_sizes, vec![16]);
        let b = frame_bounds(&ex.f).unwrap().bounds;
        assert!((b.lower - 1.0).abs() < 1e-12 && (b.upper - 1.0).abs() < 1e-12);
    }

    #[test]
    fn example21_terms_follow_closed_form() {
        let ex = example21(4).unwrap();
        for (n, inc) in ex.lambda.increments().iter().enumerate() {
            let n = (n + 1) as f64;
            assert!((inc - n.powi(3) / (n + 1.0).powi(4)).abs() < 1e-14);
        }
        assert_eq!(ex.lambda.verdict_hint, VerdictHint::IncreasingUnboundedTrend);
        assert_eq!(ex.mu.verdict_hint, VerdictHint::BoundedBelowTarget);
        assert!(matches!(example21(7), Err(Error::DepthTooLarge { depth: 7, max: 6 })));
    }

    #[test]
    fn remark22_first_block() {
        let ex = example_remark22(1).unwrap();
        assert_eq!(ex.lambda.last(), 1.0);
        assert_eq!(ex.mu.last(), 0.5);
        assert_eq!(ex.lambda.verdict_hint, VerdictHint::ExceedsTarget);
    }

    #[test]
    fn example22_ratios() {
        let ex = example22(5).unwrap();
        for (i, r) in ex.ratios.iter().enumerate() {
            let odd = (2 * i + 1) as f64;
            assert!((r - 1.0 / (odd * odd)).abs() < 1e-15);
        }
        assert_eq!(ex.closeness.verdict_hint, VerdictHint::BoundedBelowTarget);
    }

    #[test]
    fn example31_small() {
        let ex = example31(3).unwrap();
        assert_eq!(ex.pair.len(), 6);
        assert!(ex.pair.reconstruction_residual().unwrap() < 1e-15);
        assert!(ex.mu.last() < 1.0);
        assert!(ex.lambda.is_strictly_increasing());
    }
}
