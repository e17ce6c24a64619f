#![allow(clippy::needless_range_loop)]

use framecert::certificates::{
    favier_zalik_certificate, quadratic_closeness_check, thm21_certificate, SamplingOptions,
};
use framecert::hilbert::{canonical_dual, frame_bounds, gap, riesz_bounds, FrameBounds, VectorFamily};
use framecert::numerics::{op_norm, Matrix, PNorm};
use framecert::schauder::{
    min_norm, projection_constant, thm31_certificate, thm34_certificate, PNormSpace, SchauderFramePair,
};
use proptest::prelude::*;
use std::f64::consts::FRAC_PI_2;

const RTOL: f64 = 1e-9;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

fn bounds_close(a: FrameBounds, b: FrameBounds, tol: f64) -> bool {
    close(a.lower, b.lower, tol) && close(a.upper, b.upper, tol)
}

/// Family of `len` vectors in `R^dim` with entries in `[-2, 2]`.
fn family(dim: usize, len: usize) -> impl Strategy<Value = VectorFamily> {
    prop::collection::vec(prop::collection::vec(-2.0f64..2.0, dim), len)
        .prop_map(move |v| VectorFamily::new(dim, v).unwrap())
}

fn any_family() -> impl Strategy<Value = VectorFamily> {
    (2usize..=4).prop_flat_map(|d| (d..=d + 3).prop_flat_map(move |n| family(d, n)))
}

/// Frames with condition number at most 100.
fn frame() -> impl Strategy<Value = VectorFamily> {
    any_family().prop_filter("well-conditioned frame", |f| {
        let fb = frame_bounds(f).unwrap();
        fb.is_frame && fb.bounds.lower > 1e-2 * fb.bounds.upper
    })
}

fn frame_and_perturbation() -> impl Strategy<Value = (VectorFamily, VectorFamily)> {
    frame().prop_flat_map(|f| {
        let (d, n) = (f.dim(), f.len());
        (Just(f), family(d, n))
    })
}

/// Orthogonal matrix from a product of plane rotations.
fn rotation(dim: usize, angles: &[f64]) -> Matrix {
    let mut q = Matrix::identity(dim);
    let mut k = 0;
    for i in 0..dim {
        for j in i + 1..dim {
            let (s, c) = angles[k % angles.len()].sin_cos();
            let mut g = vec![0.0; dim * dim];
            for r in 0..dim {
                g[r * dim + r] = 1.0;
            }
            g[i * dim + i] = c;
            g[j * dim + j] = c;
            g[i * dim + j] = -s;
            g[j * dim + i] = s;
            q = Matrix::new(dim, dim, g).unwrap().matmul(&q).unwrap();
            k += 1;
        }
    }
    q
}

fn add_scaled(f: &VectorFamily, e: &VectorFamily, t: f64) -> VectorFamily {
    let v = f
        .vectors()
        .iter()
        .zip(e.vectors())
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + t * y).collect())
        .collect();
    VectorFamily::new(f.dim(), v).unwrap()
}

fn basis_pair(x: &VectorFamily, p: PNorm) -> Option<SchauderFramePair> {
    let g = canonical_dual(x).ok()?;
    SchauderFramePair::new(PNormSpace::new(x.dim(), p).ok()?, x.vectors().to_vec(), g.vectors().to_vec()).ok()
}

fn square_basis() -> impl Strategy<Value = VectorFamily> {
    (2usize..=4).prop_flat_map(|d| family(d, d)).prop_filter("well-conditioned basis", |f| {
        riesz_bounds(f).map(|r| r.is_riesz && r.bounds.lower > 1e-2 * r.bounds.upper).unwrap_or(false)
    })
}

fn pnorm() -> impl Strategy<Value = PNorm> {
    prop_oneof![Just(PNorm::One), Just(PNorm::Two), Just(PNorm::Inf)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frame_bounds_are_rotation_invariant(f in frame(), angles in prop::collection::vec(0.0f64..6.3, 6)) {
        let q = rotation(f.dim(), &angles);
        let rotated = f.transform(&q).unwrap();
        let a = frame_bounds(&f).unwrap().bounds;
        let b = frame_bounds(&rotated).unwrap().bounds;
        prop_assert!(bounds_close(a, b, RTOL), "{a:?} vs {b:?}");
    }

    #[test]
    fn dual_of_dual_is_the_frame(f in frame()) {
        let g = canonical_dual(&f).unwrap();
        let back = canonical_dual(&g).unwrap();
        for (u, v) in f.vectors().iter().zip(back.vectors()) {
            for (a, b) in u.iter().zip(v) {
                prop_assert!((a - b).abs() < 1e-8, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn dual_bounds_are_reciprocal(f in frame()) {
        let fb = frame_bounds(&f).unwrap().bounds;
        let gb = frame_bounds(&canonical_dual(&f).unwrap()).unwrap().bounds;
        prop_assert!(close(gb.lower, 1.0 / fb.upper, 1e-8));
        prop_assert!(close(gb.upper, 1.0 / fb.lower, 1e-8));
    }

    #[test]
    fn perturbation_sizes_grow_with_t((f, e) in frame_and_perturbation(), t1 in 0.0f64..1.0, t2 in 0.0f64..1.0) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let (a, b) = (add_scaled(&f, &e, lo), add_scaled(&f, &e, hi));
        let r21 = (thm21_certificate(&f, &a, None).unwrap(), thm21_certificate(&f, &b, None).unwrap());
        for key in ["mu", "lambda"] {
            prop_assert!(r21.0.value(key) <= r21.1.value(key) * (1.0 + 1e-12) + 1e-15, "{key}");
        }
        let qc = (quadratic_closeness_check(&f, &a).unwrap(), quadratic_closeness_check(&f, &b).unwrap());
        prop_assert!(qc.0.value("lambda") <= qc.1.value("lambda") * (1.0 + 1e-12) + 1e-15);
        let fz = (favier_zalik_certificate(&f, &a).unwrap(), favier_zalik_certificate(&f, &b).unwrap());
        prop_assert!(fz.0.value("M") <= fz.1.value("M") * (1.0 + 1e-12) + 1e-15);
    }

    #[test]
    fn gap_grows_with_rotation_angle(t1 in 0.0f64..FRAC_PI_2, t2 in 0.0f64..FRAC_PI_2) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let line = |t: f64| VectorFamily::new(3, vec![vec![t.cos(), t.sin(), 0.0]]).unwrap();
        let plane = VectorFamily::new(3, vec![vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        let a = gap(&line(lo), &plane).unwrap().value();
        let b = gap(&line(hi), &plane).unwrap().value();
        prop_assert!(a <= b + 1e-12);
        prop_assert!((b - hi.sin()).abs() < 1e-10);
    }

    #[test]
    fn gap_is_in_unit_interval(k in any_family(), seed in any::<u64>()) {
        let d = k.dim();
        let other: Vec<Vec<f64>> = (0..3)
            .map(|i| (0..d).map(|j| (((seed >> ((i * d + j) % 60)) & 7) as f64) - 3.5).collect())
            .collect();
        let l = VectorFamily::new(d, other).unwrap();
        let delta = gap(&k, &l).unwrap().value();
        prop_assert!((0.0..=1.0).contains(&delta));
    }

    #[test]
    fn gap_vanishes_for_nested_spans(l in any_family(), mix in prop::collection::vec(-1.0f64..1.0, 1..12)) {
        // K is built from combinations of the L vectors
        let n = l.len();
        let k_vecs: Vec<Vec<f64>> = mix
            .chunks(n.min(mix.len()))
            .map(|c| {
                let mut v = vec![0.0; l.dim()];
                for (coef, x) in c.iter().zip(l.vectors()) {
                    v.iter_mut().zip(x).for_each(|(a, b)| *a += coef * b);
                }
                v
            })
            .collect();
        let k = VectorFamily::new(l.dim(), k_vecs).unwrap();
        prop_assert!(gap(&k, &l).unwrap().value() < 1e-7);
    }

    #[test]
    fn min_norm_is_a_norm(
        x in square_basis(),
        p in pnorm(),
        c1 in prop::collection::vec(-3.0f64..3.0, 4),
        c2 in prop::collection::vec(-3.0f64..3.0, 4),
        s in -4.0f64..4.0,
    ) {
        let Some(fr) = basis_pair(&x, p) else { return Ok(()) };
        let n = fr.len();
        let (a, b) = (&c1[..n], &c2[..n]);
        let sum: Vec<f64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
        let scaled: Vec<f64> = a.iter().map(|u| s * u).collect();
        let na = min_norm(a, &fr).unwrap();
        let nb = min_norm(b, &fr).unwrap();
        prop_assert!(min_norm(&sum, &fr).unwrap() <= na + nb + 1e-12);
        prop_assert!(close(min_norm(&scaled, &fr).unwrap(), s.abs() * na, 1e-12));

        // naive oracle: each window summed from scratch
        let mut naive = 0.0f64;
        for m in 0..n {
            for k in m..n {
                let mut acc = vec![0.0; fr.dim()];
                for i in m..=k {
                    acc.iter_mut().zip(&fr.x_vectors()[i]).for_each(|(z, xi)| *z += a[i] * xi);
                }
                naive = naive.max(p.vector_norm(&acc));
            }
        }
        prop_assert!(close(na, naive, 1e-12));
    }

    #[test]
    fn projection_constant_at_least_one(x in square_basis(), p in pnorm()) {
        let Some(fr) = basis_pair(&x, p) else { return Ok(()) };
        let k = projection_constant(&fr).unwrap().projection_constant;
        prop_assert!(k >= 1.0 - 1e-9, "K = {k}");
    }

    #[test]
    fn vector_side_mu_matches_hilbert_mu((x, e) in square_basis().prop_flat_map(|x| {
        let (d, n) = (x.dim(), x.len());
        (Just(x), family(d, n))
    }), t in 0.0f64..0.3) {
        let Some(fr) = basis_pair(&x, PNorm::Two) else { return Ok(()) };
        let y = add_scaled(&x, &e, t);
        let opts = SamplingOptions { seed: 1, samples: 50 };
        let schauder = thm31_certificate(&fr, y.vectors(), opts).unwrap();
        let hilbert = thm21_certificate(&x, &y, None).unwrap();
        prop_assert!(close(schauder.value("mu"), hilbert.value("mu"), 1e-12));
    }

    #[test]
    fn dual_side_operator_within_mu(x in square_basis(), p in pnorm(), e in prop::collection::vec(-1.0f64..1.0, 16), t in 0.0f64..0.2) {
        let Some(fr) = basis_pair(&x, p) else { return Ok(()) };
        let d = fr.dim();
        let g: Vec<Vec<f64>> = fr
            .f_functionals()
            .iter()
            .enumerate()
            .map(|(i, f)| f.iter().enumerate().map(|(j, v)| v + t * e[(i * d + j) % e.len()]).collect())
            .collect();
        let r = thm34_certificate(&fr, &g).unwrap();
        let mu = r.value("mu");
        // ‖I − T‖ in the conjugate norm, recomputed here
        let mut t_op = Matrix::zeros(d, d);
        for (gn, xn) in g.iter().zip(fr.x_vectors()) {
            t_op.add_outer(1.0, gn, xn);
        }
        let defect = op_norm(&Matrix::identity(d).sub(&t_op).unwrap(), p.dual()).unwrap();
        prop_assert!(defect <= mu + 1e-10, "defect {defect} > mu {mu}");
    }

    #[test]
    fn certificates_are_deterministic((f, e) in frame_and_perturbation(), t in 0.0f64..0.5) {
        let h = add_scaled(&f, &e, t);
        let a = serde_json::to_string(&thm21_certificate(&f, &h, None).unwrap()).unwrap();
        let b = serde_json::to_string(&thm21_certificate(&f, &h, None).unwrap()).unwrap();
        prop_assert_eq!(a, b);
        let a = serde_json::to_string(&favier_zalik_certificate(&f, &h).unwrap()).unwrap();
        let b = serde_json::to_string(&favier_zalik_certificate(&f, &h).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn traces_never_decrease((f, e) in frame_and_perturbation(), t in 0.0f64..2.0) {
        let h = add_scaled(&f, &e, t);
        let r = thm21_certificate(&f, &h, None).unwrap();
        for (name, trace) in &r.series_traces {
            for w in trace.partial_sums.windows(2) {
                prop_assert!(w[0] <= w[1], "{name}: {w:?}");
            }
        }
    }
}
