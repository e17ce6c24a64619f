use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::pair::{
    check_vectors, projection_constant, sum_outer, vector_excess, window_max, SchauderFramePair,
    RECONSTRUCTION_TOL,
};
use crate::certificates::{CertificateReport, ReportBuilder, SamplingOptions, TheoremId, ENCLOSURE_SLACK};
use crate::error::{Error, Result};
use crate::gallery::TruncatedSeriesTrace;
use crate::hilbert::FrameBounds;
use crate::numerics::{dot, inverse, solve, sub_vec, Matrix};

const UNCONDITIONALITY: &str = "automatic at finite scale";

fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

fn check_perturbation(fr: &SchauderFramePair, other: &[Vec<f64>]) -> Result<()> {
    if other.len() != fr.len() {
        return Err(Error::LengthMismatch { left: fr.len(), right: other.len() });
    }
    check_vectors(fr.dim(), other)
}

/// Per-index terms `‖x_n − y_n‖·‖f_n‖_*` and `‖x_n − y_n‖ / ‖x_n‖`.
fn vector_side_terms(fr: &SchauderFramePair, y: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let s = fr.space();
    let mut mu = Vec::with_capacity(fr.len());
    let mut lambda = Vec::with_capacity(fr.len());
    for ((x, f), yn) in fr.x_vectors().iter().zip(fr.f_functionals()).zip(y) {
        let diff = s.norm(&sub_vec(x, yn));
        mu.push(diff * s.dual_norm(f));
        lambda.push(diff / s.norm(x));
    }
    (mu, lambda)
}

/// Outcome of the sampled inequality checks for the operators `U` and `V`.
struct Sampled {
    /// Smallest `(1+λ)·‖c‖_Min − ‖Σ c_i y_i‖` seen.
    u_worst_slack: f64,
    /// Extremes of `‖V x‖_Min / ‖x‖` over the sampled `x`.
    v_range: FrameBounds,
}

/// `U c = Σ c_i y_i` against `(1+λ)‖c‖_Min`, and `V x = (g_n(x))_n` measured
/// in the Min norm of the original vectors.
fn sample_u_v(
    fr: &SchauderFramePair,
    y: &[Vec<f64>],
    g: &[Vec<f64>],
    lambda: f64,
    opts: SamplingOptions,
) -> Sampled {
    let s = fr.space();
    let p = s.p;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut u_worst = f64::INFINITY;
    for _ in 0..opts.samples {
        let c = gaussian(&mut rng, fr.len());
        let mut image = vec![0.0; fr.dim()];
        for (ci, yi) in c.iter().zip(y) {
            image.iter_mut().zip(yi).for_each(|(a, b)| *a += ci * b);
        }
        let bound = (1.0 + lambda) * window_max(&c, fr.x_vectors(), p);
        u_worst = u_worst.min(bound - p.vector_norm(&image));
    }
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for _ in 0..opts.samples {
        let mut x = gaussian(&mut rng, fr.dim());
        let n = s.norm(&x);
        x.iter_mut().for_each(|v| *v /= n);
        let coeffs: Vec<f64> = g.iter().map(|gn| dot(gn, &x)).collect();
        let r = window_max(&coeffs, fr.x_vectors(), p);
        lo = lo.min(r);
        hi = hi.max(r);
    }
    if opts.samples == 0 {
        u_worst = 0.0;
        lo = 0.0;
    }
    Sampled { u_worst_slack: u_worst, v_range: FrameBounds { lower: lo, upper: hi } }
}

/// New functionals `g_n = (L⁻¹)ᵀ f_n` for `L = Σ y_n f_nᵀ`.
fn perturbed_dual(fr: &SchauderFramePair, y: &[Vec<f64>]) -> Result<(Matrix, Vec<Vec<f64>>)> {
    let l = sum_outer(y, fr.f_functionals(), fr.dim());
    let f_cols = Matrix::from_columns(fr.dim(), fr.f_functionals())?;
    let g = solve(&l.transpose(), &f_cols)?.columns();
    Ok((l, g))
}

/// Shared body of the two vector-side theorems; `defect_bound` is the proven
/// bound on `‖I − L‖` and `upper` the predicted upper `V` constant.
#[allow(clippy::too_many_arguments)]
fn vector_side_report(
    mut r: ReportBuilder,
    fr: &SchauderFramePair,
    y: &[Vec<f64>],
    hypothesis_ok: bool,
    lambda: f64,
    defect_bound: f64,
    upper: f64,
    opts: SamplingOptions,
) -> Result<CertificateReport> {
    let d = fr.dim();
    let s = fr.space();
    let excess_x = vector_excess(fr.x_vectors(), d)?;
    let excess_y = vector_excess(y, d)?;
    r.extra("unconditionality", UNCONDITIONALITY)
        .extra("excess_x", excess_x)
        .extra("excess_y", excess_y)
        .extra("samples", opts.samples)
        .extra("seed", opts.seed as usize);

    let (l, g) = match perturbed_dual(fr, y) {
        Ok(v) => v,
        Err(Error::Singular { .. }) if !hypothesis_ok => {
            r.extra("dual_constructed", false);
            let none = FrameBounds { lower: 0.0, upper: 0.0 };
            return Ok(r.finish(false, none, none));
        }
        Err(e) => return Err(e),
    };
    let defect = s.op_norm(&Matrix::identity(d).sub(&l)?)?;
    let residual = s.op_norm(&sum_outer(y, &g, d).sub(&Matrix::identity(d))?)?;
    let sampled = sample_u_v(fr, y, &g, lambda, opts);
    let predicted = FrameBounds { lower: 1.0 / (1.0 + lambda), upper };

    let defect_ok = defect <= defect_bound + ENCLOSURE_SLACK;
    let residual_ok = residual <= RECONSTRUCTION_TOL;
    let u_ok = sampled.u_worst_slack >= -ENCLOSURE_SLACK;
    let v_ok = predicted.encloses(&sampled.v_range, ENCLOSURE_SLACK);
    let core = hypothesis_ok && defect_ok && residual_ok;

    r.extra("dual_constructed", true)
        .extra("isomorphism_defect", defect)
        .extra("reconstruction_residual", residual)
        .extra("u_worst_slack", sampled.u_worst_slack)
        .extra("core_verdict", core)
        .extra("extended_verdict", core && u_ok && v_ok);
    r.check("defect_within_bound", defect_ok)
        .check("reconstruction_ok", residual_ok)
        .check("u_bound_ok", u_ok)
        .check("excess_preserved", excess_x == excess_y);
    Ok(r.finish(hypothesis_ok, predicted, sampled.v_range))
}

/// Vector-side perturbation under `μ = Σ‖x_n − y_n‖‖f_n‖ < 1`.
///
/// The dual `g_n = (L⁻¹)ᵀ f_n` is built explicitly. `predicted` and `actual`
/// hold the lower and upper constants of `V`, that is the range of
/// `‖(g_n(x))‖_Min / ‖x‖`: predicted `(1/(1+λ), K/(1−μ))`, actual the sampled
/// extremes.
pub fn thm31_certificate(
    fr: &SchauderFramePair,
    y: &[Vec<f64>],
    opts: SamplingOptions,
) -> Result<CertificateReport> {
    check_perturbation(fr, y)?;
    let (mu_terms, lambda_terms) = vector_side_terms(fr, y);
    let mu: f64 = mu_terms.iter().sum();
    let lambda: f64 = lambda_terms.iter().sum();
    let k = projection_constant(fr)?.projection_constant;
    let hypothesis_ok = mu < 1.0;

    let mut r = ReportBuilder::new(TheoremId::Thm31);
    r.value("mu", mu).value("lambda", lambda).value("K", k);
    r.trace("mu", TruncatedSeriesTrace::against_target(&mu_terms, Some(1.0)));
    r.trace("lambda", TruncatedSeriesTrace::against_target(&lambda_terms, None));
    let upper = if hypothesis_ok { k / (1.0 - mu) } else { f64::INFINITY };
    vector_side_report(r, fr, y, hypothesis_ok, lambda, mu, upper, opts)
}

/// Vector-side perturbation under `λ = Σ‖x_n − y_n‖/‖x_n‖ < 1/K`; same
/// construction as [`thm31_certificate`] with upper constant `K/(1−λK)`.
pub fn thm33_certificate(
    fr: &SchauderFramePair,
    y: &[Vec<f64>],
    opts: SamplingOptions,
) -> Result<CertificateReport> {
    check_perturbation(fr, y)?;
    let (mu_terms, lambda_terms) = vector_side_terms(fr, y);
    let lambda: f64 = lambda_terms.iter().sum();
    let k = projection_constant(fr)?.projection_constant;
    let lk = lambda * k;
    let hypothesis_ok = lk < 1.0;

    let mut r = ReportBuilder::new(TheoremId::Thm33);
    r.value("lambda", lambda).value("K", k).value("lambda_K", lk);
    r.value("mu", mu_terms.iter().sum());
    r.trace("lambda", TruncatedSeriesTrace::against_target(&lambda_terms, Some(1.0 / k)));
    let upper = if hypothesis_ok { k / (1.0 - lk) } else { f64::INFINITY };
    vector_side_report(r, fr, y, hypothesis_ok, lambda, lk, upper, opts)
}

/// Dual-side perturbation under `μ = Σ‖f_n − g_n‖_*‖x_n‖ < 1`.
///
/// `T = Σ g_n x_nᵀ` acts on functionals; with `L = Tᵀ` the new vectors are
/// `y_n = L⁻¹ x_n`. `predicted = (1−μ, 1+μ)` against the exact
/// `(1/‖T⁻¹‖, ‖T‖)` in the conjugate norm.
pub fn thm34_certificate(fr: &SchauderFramePair, g: &[Vec<f64>]) -> Result<CertificateReport> {
    check_perturbation(fr, g)?;
    let s = fr.space();
    let d = fr.dim();
    let q = s.p.dual();
    let mu_terms: Vec<f64> = fr
        .f_functionals()
        .iter()
        .zip(g)
        .zip(fr.x_vectors())
        .map(|((f, gn), x)| s.dual_norm(&sub_vec(f, gn)) * s.norm(x))
        .collect();
    let mu: f64 = mu_terms.iter().sum();
    let hypothesis_ok = mu < 1.0;

    let mut r = ReportBuilder::new(TheoremId::Thm34);
    r.value("mu", mu);
    r.extra("unconditionality", UNCONDITIONALITY)
        .extra("reflexivity", UNCONDITIONALITY);
    r.trace("mu", TruncatedSeriesTrace::against_target(&mu_terms, Some(1.0)));

    let t = sum_outer(g, fr.x_vectors(), d);
    let t_norm = crate::numerics::op_norm(&t, q)?;
    let defect = crate::numerics::op_norm(&Matrix::identity(d).sub(&t)?, q)?;
    r.extra("isomorphism_defect", defect);
    let t_inv = match inverse(&t) {
        Ok(m) => m,
        Err(Error::Singular { .. }) if !hypothesis_ok => {
            r.extra("dual_constructed", false);
            return Ok(r.finish(false, FrameBounds { lower: 0.0, upper: 0.0 }, FrameBounds {
                lower: 0.0,
                upper: t_norm,
            }));
        }
        Err(e) => return Err(e),
    };
    let actual = FrameBounds { lower: 1.0 / crate::numerics::op_norm(&t_inv, q)?, upper: t_norm };

    let l = t.transpose();
    let x_cols = Matrix::from_columns(d, fr.x_vectors())?;
    let y = solve(&l, &x_cols)?.columns();
    let residual = s.op_norm(&sum_outer(&y, g, d).sub(&Matrix::identity(d))?)?;
    let excess_x = vector_excess(fr.x_vectors(), d)?;
    let excess_y = vector_excess(&y, d)?;
    r.extra("dual_constructed", true)
        .extra("reconstruction_residual", residual)
        .extra("excess_x", excess_x)
        .extra("excess_y", excess_y);
    r.check("defect_within_mu", defect <= mu + ENCLOSURE_SLACK)
        .check("reconstruction_ok", residual <= RECONSTRUCTION_TOL)
        .check("excess_preserved", excess_x == excess_y);
    let predicted = FrameBounds { lower: 1.0 - mu, upper: 1.0 + mu };
    Ok(r.finish(hypothesis_ok, predicted, actual))
}

/// The perturbed vectors `y_n = L⁻¹ x_n` of [`thm34_certificate`].
pub fn thm34_vectors(fr: &SchauderFramePair, g: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    check_perturbation(fr, g)?;
    let d = fr.dim();
    let l = sum_outer(fr.x_vectors(), g, d);
    Ok(solve(&l, &Matrix::from_columns(d, fr.x_vectors())?)?.columns())
}

/// The functionals `g_n = (L⁻¹)ᵀ f_n` of [`thm31_certificate`].
pub fn perturbed_functionals(fr: &SchauderFramePair, y: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    check_perturbation(fr, y)?;
    Ok(perturbed_dual(fr, y)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::Outcome;
    use crate::numerics::PNorm;
    use crate::schauder::PNormSpace;

    fn onb(d: usize, p: PNorm) -> SchauderFramePair {
        let e: Vec<Vec<f64>> = (0..d).map(|j| crate::hilbert::unit(d, j)).collect();
        SchauderFramePair::new(PNormSpace::new(d, p).unwrap(), e.clone(), e).unwrap()
    }

    #[test]
    fn zero_perturbation_is_involutive() {
        for p in [PNorm::One, PNorm::Two, PNorm::Inf] {
            let fr = onb(3, p);
            let y = fr.x_vectors().to_vec();
            assert_eq!(perturbed_functionals(&fr, &y).unwrap(), fr.f_functionals());
            let r = thm31_certificate(&fr, &y, SamplingOptions::default()).unwrap();
            assert_eq!(r.value("mu"), 0.0);
            assert_eq!(r.outcome(), Outcome::Certified, "{r:?}");
            let r = thm33_certificate(&fr, &y, SamplingOptions::default()).unwrap();
            assert_eq!(r.outcome(), Outcome::Certified);
            let r = thm34_certificate(&fr, fr.f_functionals()).unwrap();
            assert_eq!(r.outcome(), Outcome::Certified);
            assert_eq!(thm34_vectors(&fr, fr.f_functionals()).unwrap(), y);
        }
    }

    #[test]
    fn thm33_hand_scaled() {
        let fr = onb(3, PNorm::Two);
        let y = vec![vec![1.0, 0.1, 0.0], vec![0.0, 1.0, 0.1], vec![0.1, 0.0, 1.0]];
        let r = thm33_certificate(&fr, &y, SamplingOptions::default()).unwrap();
        assert!((r.value("lambda") - 0.3).abs() < 1e-12);
        assert_eq!(r.value("K"), 1.0);
        assert!(r.extra_number("isomorphism_defect").unwrap() <= 0.3 + 1e-12);
        assert_eq!(r.outcome(), Outcome::Certified);
    }

    #[test]
    fn thm34_diagonal() {
        let fr = onb(2, PNorm::Two);
        let g = vec![vec![1.2, 0.0], vec![0.0, 1.0]];
        let r = thm34_certificate(&fr, &g).unwrap();
        assert!((r.value("mu") - 0.2).abs() < 1e-12);
        let y = thm34_vectors(&fr, &g).unwrap();
        assert!((y[0][0] - 1.0 / 1.2).abs() < 1e-15);
        assert_eq!(r.outcome(), Outcome::Certified);
    }

    #[test]
    fn thm31_large_mu_fails_hypothesis() {
        let fr = onb(2, PNorm::Two);
        let y = vec![vec![0.0, 0.0], vec![0.0, 1.0]];
        let r = thm31_certificate(&fr, &y, SamplingOptions::default()).unwrap();
        assert_eq!(r.outcome(), Outcome::HypothesisFailed);
        assert_eq!(r.extra_flag("dual_constructed"), Some(false));
    }
}
