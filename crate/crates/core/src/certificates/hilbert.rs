use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::report::{CertificateReport, ReportBuilder, TheoremId, ENCLOSURE_SLACK};
use crate::error::{Error, Result};
use crate::gallery::TruncatedSeriesTrace;
use crate::hilbert::{
    bessel_bound, canonical_dual, excess, frame_bounds, frame_sequence_bounds, gap_analysis,
    riesz_bounds, span_rank, verify_dual_pair, FrameBounds, SpanSpectrum, VectorFamily,
};
use crate::numerics::{norm2, op_norm, solve, svd, Matrix, PNorm, RANK_TOL};

/// Largest accepted `verify_dual_pair` residual for a caller-supplied dual.
pub const DUAL_TOL: f64 = 1e-8;

/// Options for the randomized validation inside [`christensen_certificate`].
#[derive(Debug, Clone, Copy)]
pub struct SamplingOptions {
    pub seed: u64,
    pub samples: usize,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        Self { seed: 0, samples: 1000 }
    }
}

/// Per-index terms `‖f_k − h_k‖²` and `‖f_k − h_k‖·‖g_k‖`.
fn perturbation_terms(
    f: &VectorFamily,
    h: &VectorFamily,
    g: &VectorFamily,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let diff = f.difference(h)?;
    let dn = diff.norms();
    let gn = g.norms();
    let lambda_terms = dn.iter().map(|d| d * d).collect();
    let mu_terms = dn.iter().zip(&gn).map(|(d, g)| d * g).collect();
    Ok((lambda_terms, mu_terms))
}

fn require_frame(f: &VectorFamily) -> Result<FrameBounds> {
    let fb = frame_bounds(f)?;
    if !fb.is_frame {
        return Err(Error::NotAFrame(format!(
            "lower frame bound {:e} is not positive relative to upper {:e}",
            fb.bounds.lower, fb.bounds.upper
        )));
    }
    Ok(fb.bounds)
}

fn resolve_dual(f: &VectorFamily, dual: Option<&VectorFamily>) -> Result<(VectorFamily, f64)> {
    let g = match dual {
        Some(g) => {
            f.check_compatible(g)?;
            g.clone()
        }
        None => canonical_dual(f)?,
    };
    let residual = verify_dual_pair(f, &g)?;
    if residual > DUAL_TOL {
        return Err(Error::BadDual { residual });
    }
    Ok((g, residual))
}

/// `B(1 + √(λ/B))²`, the upper bound shared by the μ-type theorems.
fn upper_from_lambda(b: f64, lambda: f64) -> f64 {
    b * (1.0 + (lambda / b).sqrt()).powi(2)
}

/// Least `λ` with `‖Σ c_i (x_i − y_i)‖ ≤ λ ‖Σ c_i x_i‖` for a basis `x`:
/// `σ_max((X − Y) X⁻¹)`.
///
/// Below 1, `y` is again a basis. The report additionally predicts the Riesz
/// bounds `((1−λ)² A, (1+λ)² B)` of `y` from those of `x`, and cross-checks the
/// basis conclusion against `rank(Y)`.
pub fn paley_wiener_certificate(x: &VectorFamily, y: &VectorFamily) -> Result<CertificateReport> {
    x.check_compatible(y)?;
    let d = x.dim();
    let rank_x = span_rank(x)?;
    if x.len() != d || rank_x != d {
        return Err(Error::NotABasis { len: x.len(), rank: rank_x, dim: d });
    }
    let xm = x.synthesis();
    let delta = xm.sub(&y.synthesis())?;
    // (X − Y) X⁻¹ = (X⁻ᵀ (X − Y)ᵀ)ᵀ
    let z = solve(&xm.transpose(), &delta.transpose())?.transpose();
    let lambda_star = svd(&z)?.max();

    let rx = riesz_bounds(x)?.bounds;
    let actual = riesz_bounds(y)?.bounds;
    let rank_y = span_rank(y)?;
    let hypothesis_ok = lambda_star < 1.0;
    let y_is_basis = rank_y == d;

    let mut r = ReportBuilder::new(TheoremId::PaleyWiener);
    r.value("lambda", lambda_star).value("A", rx.lower).value("B", rx.upper);
    r.extra("rank_y", rank_y).extra("y_is_basis", y_is_basis);
    r.check("implication_consistent", !hypothesis_ok || y_is_basis);
    let predicted = FrameBounds {
        lower: (1.0 - lambda_star).powi(2) * rx.lower,
        upper: (1.0 + lambda_star).powi(2) * rx.upper,
    };
    Ok(r.finish(hypothesis_ok, predicted, actual))
}

/// `(λ*, y is a basis)` as computed by [`paley_wiener_certificate`].
pub fn paley_wiener_lambda(x: &VectorFamily, y: &VectorFamily) -> Result<(f64, bool)> {
    let r = paley_wiener_certificate(x, y)?;
    Ok((r.value("lambda"), r.extra_flag("y_is_basis").unwrap_or(false)))
}

/// Frame perturbation under `‖Σc(f−g)‖ ≤ λ‖Σcf‖ + μ‖c‖` with `λ + μ/√A < 1`.
///
/// `λ` and `μ` are caller inputs. They are validated on `opts.samples` random
/// Gaussian coefficient vectors; any sampled violation fails the hypothesis.
pub fn christensen_certificate(
    f: &VectorFamily,
    g: &VectorFamily,
    lambda: f64,
    mu: f64,
    opts: SamplingOptions,
) -> Result<CertificateReport> {
    if !(lambda.is_finite() && mu.is_finite()) || lambda < 0.0 || mu < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "lambda and mu must be finite and non-negative (got {lambda}, {mu})"
        )));
    }
    f.check_compatible(g)?;
    let fb = require_frame(f)?;
    let (a, b) = (fb.lower, fb.upper);
    let fm = f.synthesis();
    let em = fm.sub(&g.synthesis())?;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst = f64::INFINITY;
    let mut violations = 0usize;
    for _ in 0..opts.samples {
        let c: Vec<f64> = (0..f.len()).map(|_| StandardNormal.sample(&mut rng)).collect();
        let lhs = norm2(&em.matvec(&c));
        let rhs = lambda * norm2(&fm.matvec(&c)) + mu * norm2(&c);
        let slack = rhs - lhs;
        worst = worst.min(slack);
        if slack < -1e-12 * (1.0 + rhs) {
            violations += 1;
        }
    }

    let s = lambda + mu / a.sqrt();
    let hypothesis_ok = s < 1.0 && violations == 0;
    let predicted = FrameBounds {
        lower: a * (1.0 - s).powi(2),
        upper: b * (1.0 + lambda + mu / b.sqrt()).powi(2),
    };
    let actual = frame_bounds(g)?.bounds;

    let mut r = ReportBuilder::new(TheoremId::Christensen);
    r.value("lambda", lambda).value("mu", mu).value("A", a).value("B", b);
    r.value("lambda_plus_mu_over_sqrt_A", s);
    r.extra("worst_sampled_slack", if worst.is_finite() { worst } else { 0.0 })
        .extra("sampled_violations", violations)
        .extra("samples", opts.samples)
        .extra("seed", opts.seed as usize)
        .extra("upper_bound_form", "B*(1+lambda+mu/sqrt(B))^2");
    Ok(r.finish(hypothesis_ok, predicted, actual))
}

/// Exact `μ` for `λ = 0`: `σ_max(F − G)`.
pub fn christensen_mu_exact(f: &VectorFamily, g: &VectorFamily) -> Result<f64> {
    f.check_compatible(g)?;
    Ok(svd(&f.synthesis().sub(&g.synthesis())?)?.max())
}

/// Exact `λ` for `μ = 0`: `σ_max((F − G) F⁺)`, or `None` when `F − G` does not
/// vanish on `ker F` (then no finite `λ` works).
pub fn christensen_lambda_exact(f: &VectorFamily, g: &VectorFamily) -> Result<Option<f64>> {
    f.check_compatible(g)?;
    let fm = f.synthesis();
    let em = fm.sub(&g.synthesis())?;
    let s = svd(&fm)?;
    let r = s.rank(RANK_TOL);
    let n = f.len();
    // F⁺ = V_r Σ_r⁻¹ U_rᵀ, and the projector onto ker F is I − V_r V_rᵀ
    let mut pinv = Matrix::zeros(n, f.dim());
    let mut row_proj = Matrix::zeros(n, n);
    for j in 0..r {
        let v = s.v.col(j);
        pinv.add_outer(1.0 / s.singular_values[j], &v, &s.u.col(j));
        row_proj.add_outer(1.0, &v, &v);
    }
    let kernel_proj = Matrix::identity(n).sub(&row_proj)?;
    let leak = svd(&em.matmul(&kernel_proj)?)?.max();
    if leak > 1e-10 * (1.0 + svd(&em)?.max()) {
        return Ok(None);
    }
    Ok(Some(svd(&em.matmul(&pinv)?)?.max()))
}

/// Frame perturbation under `μ = Σ‖f_k − h_k‖‖g_k‖ < 1` for a dual frame `g`.
///
/// Predicts bounds `((1−μ)²/D, B(1+√(λ/B))²)` with `λ = Σ‖f_k − h_k‖²` and `D`
/// the upper bound of the dual. The report also measures the defect
/// `‖I − Σ h_k g_kᵀ‖₂`, which must not exceed `μ`.
pub fn thm21_certificate(
    f: &VectorFamily,
    h: &VectorFamily,
    dual: Option<&VectorFamily>,
) -> Result<CertificateReport> {
    f.check_compatible(h)?;
    let fb = require_frame(f)?;
    let (g, dual_residual) = resolve_dual(f, dual)?;
    let gb = frame_bounds(&g)?.bounds;
    let (lambda_terms, mu_terms) = perturbation_terms(f, h, &g)?;
    let lambda: f64 = lambda_terms.iter().sum();
    let mu: f64 = mu_terms.iter().sum();

    let d = f.dim();
    let mut l_op = Matrix::zeros(d, d);
    for (hk, gk) in h.vectors().iter().zip(g.vectors()) {
        l_op.add_outer(1.0, hk, gk);
    }
    let defect = op_norm(&Matrix::identity(d).sub(&l_op)?, PNorm::Two)?;

    let hypothesis_ok = mu < 1.0;
    let predicted = FrameBounds {
        lower: (1.0 - mu).powi(2) / gb.upper,
        upper: upper_from_lambda(fb.upper, lambda),
    };
    let actual = frame_bounds(h)?.bounds;

    let mut r = ReportBuilder::new(TheoremId::Thm21);
    r.value("lambda", lambda)
        .value("mu", mu)
        .value("A", fb.lower)
        .value("B", fb.upper)
        .value("C", gb.lower)
        .value("D", gb.upper);
    r.extra("isomorphism_defect", defect).extra("dual_residual", dual_residual);
    r.check("defect_within_mu", defect <= mu + ENCLOSURE_SLACK);
    r.trace("lambda", TruncatedSeriesTrace::against_target(&lambda_terms, None));
    r.trace("mu", TruncatedSeriesTrace::against_target(&mu_terms, Some(1.0)));
    Ok(r.finish(hypothesis_ok, predicted, actual))
}

/// Frame perturbation when `{f_k − h_k}` is Bessel with bound `M < A`.
pub fn favier_zalik_certificate(f: &VectorFamily, h: &VectorFamily) -> Result<CertificateReport> {
    f.check_compatible(h)?;
    let fb = require_frame(f)?;
    let (a, b) = (fb.lower, fb.upper);
    let m = bessel_bound(&f.difference(h)?)?;
    let hypothesis_ok = m < a;
    let predicted = FrameBounds {
        lower: (1.0 - (m / a).sqrt()).powi(2) * a,
        upper: (1.0 + (m / b).sqrt()).powi(2) * b,
    };
    let actual = frame_bounds(h)?.bounds;
    let mut r = ReportBuilder::new(TheoremId::FavierZalik);
    r.value("M", m).value("A", a).value("B", b);
    Ok(r.finish(hypothesis_ok, predicted, actual))
}

/// Quadratic closeness test `λ = Σ‖f_k − g_k‖² < A`.
///
/// When it applies, `‖Σc(f−g)‖ ≤ √λ ‖c‖` puts the pair under the Christensen
/// certificate with `(0, √λ)`, giving `(A(1−√(λ/A))², B(1+√(λ/B))²)`.
pub fn quadratic_closeness_check(f: &VectorFamily, g: &VectorFamily) -> Result<CertificateReport> {
    f.check_compatible(g)?;
    let fb = require_frame(f)?;
    let (a, b) = (fb.lower, fb.upper);
    let lambda_terms: Vec<f64> = f.difference(g)?.norms().iter().map(|n| n * n).collect();
    let lambda: f64 = lambda_terms.iter().sum();
    let applicable = lambda < a;
    let predicted = FrameBounds {
        lower: a * (1.0 - (lambda / a).sqrt()).powi(2),
        upper: upper_from_lambda(b, lambda),
    };
    let actual = frame_bounds(g)?.bounds;
    let mut r = ReportBuilder::new(TheoremId::QuadraticCloseness);
    r.value("lambda", lambda).value("A", a).value("B", b);
    r.extra("applicable", applicable);
    r.trace("lambda", TruncatedSeriesTrace::against_target(&lambda_terms, Some(a)));
    Ok(r.finish(applicable, predicted, actual))
}

/// Near-Riesz perturbation: `μ = Σ‖f_k − h_k‖‖S⁻¹f_k‖ < 1` keeps `h` complete
/// with the same excess as `f`.
pub fn near_riesz_excess_certificate(
    f: &VectorFamily,
    h: &VectorFamily,
) -> Result<CertificateReport> {
    f.check_compatible(h)?;
    let fb = require_frame(f)?;
    let g = canonical_dual(f)?;
    let (lambda_terms, mu_terms) = perturbation_terms(f, h, &g)?;
    let lambda: f64 = lambda_terms.iter().sum();
    let mu: f64 = mu_terms.iter().sum();
    let hypothesis_ok = mu < 1.0;

    let excess_f = excess(f)?;
    let excess_h = excess(h)?;
    let complete = span_rank(h)? == h.dim();
    let predicted = FrameBounds {
        lower: (1.0 - mu).powi(2) * fb.lower,
        upper: upper_from_lambda(fb.upper, lambda),
    };
    let actual = frame_bounds(h)?.bounds;

    let mut r = ReportBuilder::new(TheoremId::NearRiesz);
    r.value("lambda", lambda).value("mu", mu).value("A", fb.lower).value("B", fb.upper);
    r.extra("excess_f", excess_f).extra("excess_h", excess_h);
    r.check("h_complete", complete);
    r.check("excess_preserved", excess_f == excess_h);
    r.trace("mu", TruncatedSeriesTrace::against_target(&mu_terms, Some(1.0)));
    Ok(r.finish(hypothesis_ok, predicted, actual))
}

/// Frame-sequence perturbation controlled by the gap `δ(K, L) < 1` from
/// `K = span(h)` to `L = span(f)` together with `μ < 1`.
///
/// Predicts `((1−μ)²/D, B(1+√(λ/B))²/(1−δ)²)` for `h` on its own span and
/// checks that `P_L` restricted to `K` is an isomorphism onto `L`.
pub fn gap_certificate(
    f: &VectorFamily,
    h: &VectorFamily,
    dual: Option<&VectorFamily>,
) -> Result<CertificateReport> {
    if f.is_all_zero() {
        return Err(Error::ZeroFamily);
    }
    f.check_compatible(h)?;
    let fb = frame_sequence_bounds(f)?;
    let (g, dual_residual) = resolve_dual(f, dual)?;
    let gb = frame_sequence_bounds(&g)?;
    let (lambda_terms, mu_terms) = perturbation_terms(f, h, &g)?;
    let lambda: f64 = lambda_terms.iter().sum();
    let mu: f64 = mu_terms.iter().sum();

    let geo = gap_analysis(h, f)?;
    let delta = geo.delta.value();
    let sigma_min = geo.sigma_min_projection.unwrap_or(0.0);
    let hypothesis_ok = delta < 1.0 && mu < 1.0;

    let actual = if h.is_all_zero() {
        FrameBounds { lower: 0.0, upper: 0.0 }
    } else {
        frame_sequence_bounds(h)?
    };
    let predicted = FrameBounds {
        lower: (1.0 - mu).powi(2) / gb.upper,
        upper: upper_from_lambda(fb.upper, lambda) / (1.0 - delta).powi(2),
    };

    let mut r = ReportBuilder::new(TheoremId::Gap);
    r.value("lambda", lambda)
        .value("mu", mu)
        .value("delta", delta)
        .value("A", fb.lower)
        .value("B", fb.upper)
        .value("C", gb.lower)
        .value("D", gb.upper);
    r.extra("sigma_min_projection", sigma_min)
        .extra("dim_K", geo.dim_k)
        .extra("dim_L", geo.dim_l)
        .extra("projection_rank", geo.projection_rank)
        .extra("dual_residual", dual_residual);
    r.check("projection_lower_bound", sigma_min >= (1.0 - delta) - ENCLOSURE_SLACK && sigma_min > 0.0);
    r.check(
        "projection_isomorphism",
        geo.projection_rank == geo.dim_l && geo.dim_k == geo.dim_l,
    );
    r.trace("lambda", TruncatedSeriesTrace::against_target(&lambda_terms, None));
    r.trace("mu", TruncatedSeriesTrace::against_target(&mu_terms, Some(1.0)));
    Ok(r.finish(hypothesis_ok, predicted, actual))
}

/// Riesz-sequence perturbation under `μ = Σ‖f_k − g_k‖‖S⁻¹f_k‖ < 1`;
/// predicts Riesz bounds `(A(1−μ)², B(1+√(λ/B))²)` for `g`.
pub fn riesz_sequence_certificate(
    f: &VectorFamily,
    g: &VectorFamily,
) -> Result<CertificateReport> {
    f.check_compatible(g)?;
    let rb = riesz_bounds(f)?;
    if !rb.is_riesz {
        return Err(Error::NotRiesz { lower: rb.bounds.lower });
    }
    let (a, b) = (rb.bounds.lower, rb.bounds.upper);
    let dual = f.transform(&SpanSpectrum::of(f)?.frame_operator_pinv())?;
    let (lambda_terms, mu_terms) = perturbation_terms(f, g, &dual)?;
    let lambda: f64 = lambda_terms.iter().sum();
    let mu: f64 = mu_terms.iter().sum();
    let hypothesis_ok = mu < 1.0;
    let predicted = FrameBounds {
        lower: a * (1.0 - mu).powi(2),
        upper: upper_from_lambda(b, lambda),
    };
    let actual = riesz_bounds(g)?.bounds;
    let mut r = ReportBuilder::new(TheoremId::Riesz);
    r.value("lambda", lambda).value("mu", mu).value("A", a).value("B", b);
    r.trace("mu", TruncatedSeriesTrace::against_target(&mu_terms, Some(1.0)));
    Ok(r.finish(hypothesis_ok, predicted, actual))
}
