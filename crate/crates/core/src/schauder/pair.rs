use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{op_norm, rank, Matrix, PNorm, RANK_TOL};

/// Largest accepted reconstruction residual for a Schauder frame pair.
pub const RECONSTRUCTION_TOL: f64 = 1e-8;

/// `R^d` with the `p`-norm; functionals carry the conjugate norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PNormSpace {
    pub dimension: usize,
    pub p: PNorm,
}

impl PNormSpace {
    pub fn new(dimension: usize, p: PNorm) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::EmptyShape { rows: 0, cols: 0 });
        }
        Ok(Self { dimension, p })
    }

    pub fn norm(&self, v: &[f64]) -> f64 {
        self.p.vector_norm(v)
    }

    /// Norm of a functional, i.e. the conjugate-exponent norm of its coordinates.
    pub fn dual_norm(&self, v: &[f64]) -> f64 {
        self.p.dual().vector_norm(v)
    }

    pub fn op_norm(&self, m: &Matrix) -> Result<f64> {
        op_norm(m, self.p)
    }
}

/// Vectors `x_j` and functionals `f_j` with `x = Σ f_j(x) x_j`.
#[derive(Debug, Clone, Serialize)]
pub struct SchauderFramePair {
    space: PNormSpace,
    x_vectors: Vec<Vec<f64>>,
    f_functionals: Vec<Vec<f64>>,
}

/// `Σ_j a_j b_jᵀ`.
pub(crate) fn sum_outer(a: &[Vec<f64>], b: &[Vec<f64>], dim: usize) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for (u, v) in a.iter().zip(b) {
        m.add_outer(1.0, u, v);
    }
    m
}

pub(crate) fn check_vectors(dim: usize, vs: &[Vec<f64>]) -> Result<()> {
    for (i, v) in vs.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::DimensionMismatch { left: v.len(), right: dim });
        }
        if let Some(j) = v.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { row: i, col: j, value: v[j] });
        }
    }
    Ok(())
}

impl SchauderFramePair {
    pub fn new(space: PNormSpace, x_vectors: Vec<Vec<f64>>, f_functionals: Vec<Vec<f64>>) -> Result<Self> {
        let pair = Self::unchecked(space, x_vectors, f_functionals)?;
        let residual = pair.reconstruction_residual()?;
        if residual > RECONSTRUCTION_TOL {
            return Err(Error::NotAFrame(format!("reconstruction residual {residual:e}")));
        }
        Ok(pair)
    }

    /// Validates shapes and nonzero vectors but not the reconstruction identity.
    pub(crate) fn unchecked(
        space: PNormSpace,
        x_vectors: Vec<Vec<f64>>,
        f_functionals: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if x_vectors.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if x_vectors.len() != f_functionals.len() {
            return Err(Error::LengthMismatch { left: x_vectors.len(), right: f_functionals.len() });
        }
        check_vectors(space.dimension, &x_vectors)?;
        check_vectors(space.dimension, &f_functionals)?;
        if let Some(index) = x_vectors.iter().position(|v| v.iter().all(|&x| x == 0.0)) {
            return Err(Error::ZeroVector { index });
        }
        Ok(Self { space, x_vectors, f_functionals })
    }

    pub fn space(&self) -> PNormSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dimension
    }

    pub fn len(&self) -> usize {
        self.x_vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x_vectors.is_empty()
    }

    pub fn x_vectors(&self) -> &[Vec<f64>] {
        &self.x_vectors
    }

    pub fn f_functionals(&self) -> &[Vec<f64>] {
        &self.f_functionals
    }

    /// `Σ_j x_j f_jᵀ`.
    pub fn reconstruction_operator(&self) -> Matrix {
        sum_outer(&self.x_vectors, &self.f_functionals, self.dim())
    }

    /// `‖Σ_j x_j f_jᵀ − I‖_{p→p}`.
    pub fn reconstruction_residual(&self) -> Result<f64> {
        let r = self.reconstruction_operator().sub(&Matrix::identity(self.dim()))?;
        self.space.op_norm(&r)
    }

    /// Coefficients `f_j(x)`.
    pub fn analysis(&self, x: &[f64]) -> Vec<f64> {
        self.f_functionals.iter().map(|f| crate::numerics::dot(f, x)).collect()
    }
}

/// Norms of all window operators `Σ_{i=m}^{n} x_i f_iᵀ` and their maximum.
#[derive(Debug, Clone, Serialize)]
pub struct MinNormProfile {
    pub projection_constant: f64,
    /// Row `m` holds the norms for windows `[m, n]`, `n = m, …, N−1` (0-based).
    pub partial_sum_norms: Vec<Vec<f64>>,
}

impl MinNormProfile {
    /// Norm of the window `[m, n]` (0-based, inclusive).
    pub fn window(&self, m: usize, n: usize) -> f64 {
        self.partial_sum_norms[m][n - m]
    }
}

/// Exact projection constant over all `N(N+1)/2` windows.
pub fn projection_constant(fr: &SchauderFramePair) -> Result<MinNormProfile> {
    let n = fr.len();
    let d = fr.dim();
    let mut table = Vec::with_capacity(n);
    let mut best = 0.0f64;
    for m in 0..n {
        let mut window = Matrix::zeros(d, d);
        let mut row = Vec::with_capacity(n - m);
        for k in m..n {
            window.add_outer(1.0, &fr.x_vectors[k], &fr.f_functionals[k]);
            let v = fr.space.op_norm(&window)?;
            best = best.max(v);
            row.push(v);
        }
        table.push(row);
    }
    Ok(MinNormProfile { projection_constant: best, partial_sum_norms: table })
}

/// `max_{m ≤ n} ‖Σ_{i=m}^{n} c_i x_i‖_p` over windows inside `coeffs`.
pub fn min_norm(coeffs: &[f64], fr: &SchauderFramePair) -> Result<f64> {
    if coeffs.len() > fr.len() {
        return Err(Error::LengthMismatch { left: coeffs.len(), right: fr.len() });
    }
    Ok(window_max(coeffs, &fr.x_vectors, fr.space.p))
}

pub(crate) fn window_max(coeffs: &[f64], xs: &[Vec<f64>], p: PNorm) -> f64 {
    let d = xs.first().map_or(0, Vec::len);
    let mut best = 0.0f64;
    let mut acc = vec![0.0; d];
    for m in 0..coeffs.len() {
        acc.iter_mut().for_each(|a| *a = 0.0);
        for (c, x) in coeffs[m..].iter().zip(&xs[m..]) {
            acc.iter_mut().zip(x).for_each(|(a, xi)| *a += c * xi);
            best = best.max(p.vector_norm(&acc));
        }
    }
    best
}

/// `N − rank(X)`: how many vectors exceed a basis.
pub fn schauder_excess(fr: &SchauderFramePair) -> Result<usize> {
    vector_excess(fr.x_vectors(), fr.dim())
}

pub(crate) fn vector_excess(xs: &[Vec<f64>], dim: usize) -> Result<usize> {
    let r = rank(&Matrix::from_columns(dim, xs)?, RANK_TOL)?;
    Ok(xs.len() - r)
}
