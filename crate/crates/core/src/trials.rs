//! Random perturbation instances scaled to satisfy each theorem's hypothesis.
//!
//! Every generator draws its dimension, family size and perturbation size
//! from the supplied generator, so a fixed seed reproduces a whole suite.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::certificates::{
    christensen_certificate, christensen_mu_exact, favier_zalik_certificate, gap_certificate,
    near_riesz_excess_certificate, paley_wiener_certificate, riesz_sequence_certificate,
    thm21_certificate, CertificateReport, SamplingOptions, TheoremId,
};
use crate::error::{Error, Result};
use crate::hilbert::{bessel_bound, canonical_dual, frame_bounds, VectorFamily};
use crate::numerics::{dot, inverse, norm2, orthonormal_span, solve, svd, Matrix, PNorm, RANK_TOL};
use crate::schauder::{
    projection_constant, thm31_certificate, thm33_certificate, thm34_certificate, PNormSpace,
    SchauderFramePair,
};

/// Dimension range of the random instances.
pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 8;
/// Largest family size of the random Hilbert instances.
pub const MAX_LEN: usize = 40;
/// Largest family size of the random Schauder instances; the projection
/// constant and the Min norm cost `O(N²)` per evaluation.
pub const MAX_SCHAUDER_LEN: usize = 20;
/// Samples used by the randomized checks inside the certificates.
pub const SAMPLES: usize = 1000;

fn gaussian_vectors(rng: &mut ChaCha8Rng, dim: usize, len: usize) -> Vec<Vec<f64>> {
    (0..len)
        .map(|_| (0..dim).map(|_| StandardNormal.sample(rng)).collect())
        .collect()
}

/// Gaussian family of `len` vectors in `R^dim`.
pub fn gaussian_family(rng: &mut ChaCha8Rng, dim: usize, len: usize) -> VectorFamily {
    VectorFamily::new(dim, gaussian_vectors(rng, dim, len)).expect("finite Gaussian entries")
}

/// Gaussian frame: `len ≥ dim` vectors, redrawn until the lower bound is not tiny.
pub fn random_frame(rng: &mut ChaCha8Rng, dim: usize, len: usize) -> VectorFamily {
    loop {
        let f = gaussian_family(rng, dim, len.max(dim));
        let b = frame_bounds(&f).expect("well-formed family").bounds;
        if b.lower > 1e-3 * b.upper {
            return f;
        }
    }
}

fn perturbation_size(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(0.05..0.95)
}

fn draw_dim(rng: &mut ChaCha8Rng, min: usize) -> usize {
    rng.random_range(min.max(MIN_DIM)..=MAX_DIM)
}

fn add_scaled(f: &VectorFamily, e: &[Vec<f64>], t: f64) -> VectorFamily {
    let v = f
        .vectors()
        .iter()
        .zip(e)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + t * y).collect())
        .collect();
    VectorFamily::new(f.dim(), v).expect("finite entries")
}

/// `Σ‖e_k‖‖g_k‖`.
fn weighted_size(e: &[Vec<f64>], g: &VectorFamily) -> f64 {
    e.iter().zip(g.vectors()).map(|(a, b)| norm2(a) * norm2(b)).sum()
}

fn christensen_trial(rng: &mut ChaCha8Rng) -> Result<CertificateReport> {
    let d = draw_dim(rng, 2);
    let n = rng.random_range(d..=MAX_LEN);
    let f = random_frame(rng, d, n);
    let a = frame_bounds(&f)?.bounds.lower;
    let e = gaussian_family(rng, d, n);
    let raw = svd(&e.synthesis())?.max();
    let target = perturbation_size(rng) * a.sqrt();
    let g = add_scaled(&f, e.vectors(), target / raw);
    let mu = christensen_mu_exact(&f, &g)?;
    let seed = rng.random();
    christensen_certificate(&f, &g, 0.0, mu * (1.0 + 1e-12), SamplingOptions { seed, samples: SAMPLES })
}

fn thm21_trial(rng: &mut ChaCha8Rng) -> Result<CertificateReport> {
    let d = draw_dim(rng, 2);
    let n = rng.random_range(d..=MAX_LEN);
    let f = random_frame(rng, d, n);
    let g = canonical_dual(&f)?;
    let e = gaussian_vectors(rng, d, n);
    let t = perturbation_size(rng) / weighted_size(&e, &g);
    thm21_certificate(&f, &add_scaled(&f, &e, t), None)
}

fn favier_zalik_trial(rng: &mut ChaCha8Rng) -> Result<CertificateReport> {
    let d = draw_dim(rng, 2);
    let n = rng.random_range(d..=MAX_LEN);
    let f = random_frame(rng, d, n);
    let a = frame_bounds(&f)?.bounds.lower;
    let e = gaussian_family(rng, d, n);
    let m = bessel_bound(&e)?;
    let t = (perturbation_size(rng) * a / m).sqrt();
    favier_zalik_certificate(&f, &add_scaled(&f, e.vectors(), t))
}

/// Rotation by `angle` in the plane of the orthonormal pair `(u, v)`.
fn plane_rotation(u: &[f64], v: &[f64], angle: f64) -> Matrix {
    let d = u.len();
    let mut r = Matrix::identity(d);
    let (c, s) = (angle.cos(), angle.sin());
    r.add_outer(c - 1.0, u, u);
    r.add_outer(c - 1.0, v, v);
    r.add_outer(s, v, u);
    r.add_outer(-s, u, v);
    r
}

/// `L` a random proper subspace, `f` a frame for it, and `h = R(f + E)` with
/// `E` inside `L` and `R` a small rotation out of `L`.
fn gap_trial(rng: &mut ChaCha8Rng) -> Result<CertificateReport> {
    let d = draw_dim(rng, 3);
    let r = rng.random_range(1..d);
    let n = rng.random_range(r..=MAX_LEN);
    let basis = orthonormal_span(&Matrix::from_columns(d, &gaussian_vectors(rng, d, r))?, RANK_TOL)?;
    let lift = |c: &[Vec<f64>]| -> Result<VectorFamily> {
        VectorFamily::new(d, c.iter().map(|x| basis.matvec(x)).collect())
    };
    let f = lift(random_frame(rng, r, n).vectors())?;
    let g = canonical_dual(&f)?;
    let e = lift(gaussian_family(rng, r, n).vectors())?;
    let budget = perturbation_size(rng);
    let moved = add_scaled(&f, e.vectors(), 0.5 * budget / weighted_size(e.vectors(), &g));

    // unit vectors in L and in its complement
    let u = basis.col(0);
    let mut v: Vec<f64> = StandardNormal.sample_iter(&mut *rng).take(d).collect();
    for j in 0..r {
        let b = basis.col(j);
        let c = dot(&v, &b);
        v.iter_mut().zip(&b).for_each(|(x, y)| *x -= c * y);
    }
    let nv = norm2(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let spread: f64 = moved.norms().iter().zip(g.norms()).map(|(a, b)| a * b).sum();
    // ‖R − I‖ = 2 sin(θ/2) ≤ θ
    let angle = (0.5 * budget / spread).min(0.5);
    let h = moved.transform(&plane_rotation(&u, &v, angle))?;
    gap_certificate(&f, &h, None)
}

fn riesz_trial(rng: &mut ChaCha8Rng) -> Result<CertificateReport> {
    let d = draw_dim(rng, 2);
    let n = rng.random_range(1..=d);
    let f = loop {
        let f = gaussian_family(rng, d, n);
        if crate::hilbert::riesz_bounds(&f)?.bounds.lower > 1e-3 {
            break f;
        }
    };
    let e = gaussian_vectors(rng, d, n);
    let dual = canonical_dual(&f)?;
    let t = perturbation_size(rng) / weighted_size(&e, &dual);
    riesz_sequence_certificate(&f, &add_scaled(&f, &e, t))
}

fn paley_wiener_trial(rng: &mut ChaCha8Rng) -> Result<CertificateReport> {
    let d = draw_dim(rng, 2);
    let x = random_frame(rng, d, d);
    let e = gaussian_family(rng, d, d);
    // ‖E X⁻¹‖ ≤ ‖E‖ / σ_min(X)
    let sigma_min = frame_bounds(&x)?.bounds.lower.sqrt();
    let raw = svd(&e.synthesis())?.max();
    let t = perturbation_size(rng) * sigma_min / raw;
    paley_wiener_certificate(&x, &add_scaled(&x, e.vectors(), t))
}

/// A Riesz basis of `R^d` plus up to three extra vectors, and a perturbation
/// with `μ < 1`.
pub fn near_riesz_trial(rng: &mut ChaCha8Rng) -> Result<CertificateReport> {
    let d = draw_dim(rng, 2);
    let extra = rng.random_range(1..=3);
    let base = random_frame(rng, d, d);
    let combos = gaussian_vectors(rng, d, extra);
    let xm = base.synthesis();
    let extras = VectorFamily::new(d, combos.iter().map(|c| xm.matvec(c)).collect())?;
    let f = base.extended(&extras)?;
    let g = canonical_dual(&f)?;
    let e = gaussian_vectors(rng, d, f.len());
    let t = perturbation_size(rng) / weighted_size(&e, &g);
    near_riesz_excess_certificate(&f, &add_scaled(&f, &e, t))
}

fn draw_norm(rng: &mut ChaCha8Rng) -> PNorm {
    [PNorm::One, PNorm::Two, PNorm::Inf][rng.random_range(0..3)]
}

/// Schauder frame pair with `len` vectors: a random basis when `len = d`,
/// otherwise the Euclidean canonical dual `F = (X Xᵀ)⁻¹ X`.
pub fn random_schauder_pair(rng: &mut ChaCha8Rng, dim: usize, len: usize, p: PNorm) -> Result<SchauderFramePair> {
    let x = random_frame(rng, dim, len);
    let xm = x.synthesis();
    let f = if len == dim {
        inverse(&xm)?.transpose()
    } else {
        solve(&xm.gram_rows(), &xm)?
    };
    SchauderFramePair::new(PNormSpace::new(dim, p)?, x.into_vectors(), f.columns())
}

/// A Schauder basis plus up to three extra vectors with split functionals.
pub fn random_near_schauder_pair(rng: &mut ChaCha8Rng, dim: usize, p: PNorm) -> Result<SchauderFramePair> {
    let basis = random_schauder_pair(rng, dim, dim, p)?;
    let extra = rng.random_range(1..=3);
    let mut x = basis.x_vectors().to_vec();
    let mut f = basis.f_functionals().to_vec();
    // x_j repeated with its functional split between the copies
    for _ in 0..extra {
        let j = rng.random_range(0..dim);
        let w: f64 = rng.random_range(0.2..0.8);
        let fj = f[j].clone();
        f[j] = fj.iter().map(|v| v * w).collect();
        x.push(x[j].clone());
        f.push(fj.iter().map(|v| v * (1.0 - w)).collect());
    }
    SchauderFramePair::new(basis.space(), x, f)
}

fn schauder_pair(rng: &mut ChaCha8Rng) -> Result<SchauderFramePair> {
    let d = draw_dim(rng, 2);
    let n = rng.random_range(d..=MAX_SCHAUDER_LEN.max(d));
    let p = draw_norm(rng);
    random_schauder_pair(rng, d, n, p)
}

/// `y = x + tE` with `t` chosen so that `Σ‖x_n − y_n‖‖f_n‖_* = target`.
fn vector_side_mu(fr: &SchauderFramePair, rng: &mut ChaCha8Rng, target: f64) -> Vec<Vec<f64>> {
    let s = fr.space();
    let e = gaussian_vectors(rng, fr.dim(), fr.len());
    let raw: f64 = e.iter().zip(fr.f_functionals()).map(|(a, f)| s.norm(a) * s.dual_norm(f)).sum();
    shift(fr.x_vectors(), &e, target / raw)
}

fn shift(base: &[Vec<f64>], e: &[Vec<f64>], t: f64) -> Vec<Vec<f64>> {
    base.iter()
        .zip(e)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + t * y).collect())
        .collect()
}

fn thm31_trial(rng: &mut ChaCha8Rng) -> Result<CertificateReport> {
    let fr = schauder_pair(rng)?;
    let target = perturbation_size(rng);
    let y = vector_side_mu(&fr, rng, target);
    let seed = rng.random();
    thm31_certificate(&fr, &y, SamplingOptions { seed, samples: SAMPLES })
}

fn thm33_trial(rng: &mut ChaCha8Rng) -> Result<CertificateReport> {
    let fr = schauder_pair(rng)?;
    let s = fr.space();
    let k = projection_constant(&fr)?.projection_constant;
    let e = gaussian_vectors(rng, fr.dim(), fr.len());
    let raw: f64 = e.iter().zip(fr.x_vectors()).map(|(a, x)| s.norm(a) / s.norm(x)).sum();
    let t = perturbation_size(rng) / (k * raw);
    let y = shift(fr.x_vectors(), &e, t);
    let seed = rng.random();
    thm33_certificate(&fr, &y, SamplingOptions { seed, samples: SAMPLES })
}

fn thm34_trial(rng: &mut ChaCha8Rng) -> Result<CertificateReport> {
    let fr = schauder_pair(rng)?;
    let s = fr.space();
    let e = gaussian_vectors(rng, fr.dim(), fr.len());
    let raw: f64 = e.iter().zip(fr.x_vectors()).map(|(a, x)| s.dual_norm(a) * s.norm(x)).sum();
    let t = perturbation_size(rng) / raw;
    thm34_certificate(&fr, &shift(fr.f_functionals(), &e, t))
}

/// Near-Schauder basis with a vector-side perturbation under `μ < 1`.
pub fn near_schauder_trial(rng: &mut ChaCha8Rng) -> Result<CertificateReport> {
    let d = draw_dim(rng, 2);
    let p = draw_norm(rng);
    let fr = random_near_schauder_pair(rng, d, p)?;
    let target = perturbation_size(rng);
    let y = vector_side_mu(&fr, rng, target);
    let seed = rng.random();
    thm31_certificate(&fr, &y, SamplingOptions { seed, samples: SAMPLES })
}

/// One random instance for `theorem`, scaled so that its hypothesis holds.
pub fn trial(theorem: TheoremId, rng: &mut ChaCha8Rng) -> Result<CertificateReport> {
    match theorem {
        TheoremId::PaleyWiener => paley_wiener_trial(rng),
        TheoremId::Christensen => christensen_trial(rng),
        TheoremId::Thm21 => thm21_trial(rng),
        TheoremId::FavierZalik => favier_zalik_trial(rng),
        TheoremId::NearRiesz => near_riesz_trial(rng),
        TheoremId::Gap => gap_trial(rng),
        TheoremId::Riesz => riesz_trial(rng),
        TheoremId::Thm31 => thm31_trial(rng),
        TheoremId::Thm33 => thm33_trial(rng),
        TheoremId::Thm34 => thm34_trial(rng),
        TheoremId::QuadraticCloseness => Err(Error::InvalidParameter(
            "quadratic closeness is a test, not a certificate with random trials".into(),
        )),
    }
}
