use super::Matrix;
use super::matrix::dot;
use crate::error::{Error, Result};

pub const SVD_MAX_SWEEPS: usize = 100;
/// Default relative tolerance for rank and span decisions.
pub const RANK_TOL: f64 = 1e-10;

/// Thin singular value decomposition `M = U Σ Vᵀ` with `k = min(rows, cols)`.
///
/// Columns of `u` belonging to a zero singular value are left as zero vectors.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: Matrix,
    pub singular_values: Vec<f64>,
    pub v: Matrix,
}

impl Svd {
    pub fn max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// Number of singular values above `rel_tol · σ_max`.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let cut = rel_tol * self.max();
        if self.max() == 0.0 {
            return 0;
        }
        self.singular_values.iter().filter(|&&s| s > cut).count()
    }
}

/// One-sided (Hestenes) Jacobi SVD.
///
/// Works on whichever orientation is tall, so a `d x N` synthesis matrix with
/// thousands of columns only ever rotates `d` long vectors.
pub fn svd(m: &Matrix) -> Result<Svd> {
    if m.rows() >= m.cols() {
        hestenes(m)
    } else {
        let t = hestenes(&m.transpose())?;
        Ok(Svd { u: t.v, singular_values: t.singular_values, v: t.u })
    }
}

fn hestenes(m: &Matrix) -> Result<Svd> {
    let (rows, cols) = m.shape();
    let mut a = m.columns();
    let mut v: Vec<Vec<f64>> = (0..cols)
        .map(|j| {
            let mut e = vec![0.0; cols];
            e[j] = 1.0;
            e
        })
        .collect();
    let tol = (rows as f64 * f64::EPSILON).max(1e-15);

    let mut converged = false;
    for _ in 0..SVD_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let alpha = dot(&a[p], &a[p]);
                let beta = dot(&a[q], &a[q]);
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = dot(&a[p], &a[q]);
                if gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = if zeta.abs() > 1e150 {
                    0.5 / zeta
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut a, p, q, c, s);
                rotate_pair(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: SVD_MAX_SWEEPS });
    }

    let norms: Vec<f64> = a.iter().map(|c| dot(c, c).sqrt()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let mut u = Matrix::zeros(rows, cols);
    let mut vm = Matrix::zeros(cols, cols);
    let mut singular_values = Vec::with_capacity(cols);
    for (dst, &src) in order.iter().enumerate() {
        let s = norms[src];
        singular_values.push(s);
        if s > 0.0 {
            let col: Vec<f64> = a[src].iter().map(|x| x / s).collect();
            u.set_col(dst, &col);
        }
        vm.set_col(dst, &v[src]);
    }
    Ok(Svd { u, singular_values, v: vm })
}

fn rotate_pair(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (lo, hi) = cols.split_at_mut(q);
    let (cp, cq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let xp = *x;
        let xq = *y;
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}

/// Singular values in descending order (`min(rows, cols)` of them).
pub fn singular_values(m: &Matrix) -> Result<Vec<f64>> {
    Ok(svd(m)?.singular_values)
}

/// Numerical rank: number of `σ_i > rel_tol · σ_max`. The zero matrix has rank 0.
pub fn rank(m: &Matrix, rel_tol: f64) -> Result<usize> {
    Ok(svd(m)?.rank(rel_tol))
}

/// Orthonormal basis (as columns) of the column space of `m`.
///
/// The result has `rank(m, rel_tol)` columns and may have none.
pub fn orthonormal_span(m: &Matrix, rel_tol: f64) -> Result<Matrix> {
    let s = svd(m)?;
    let r = s.rank(rel_tol);
    let mut basis = Matrix::zeros(m.rows(), r);
    for j in 0..r {
        basis.set_col(j, &s.u.col(j));
    }
    Ok(basis)
}

/// Orthogonal projector `B Bᵀ` onto the span of orthonormal columns `B`.
pub fn projector(basis: &Matrix) -> Matrix {
    basis.gram_rows()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_diagonal() {
        assert_eq!(singular_values(&Matrix::zeros(2, 3)).unwrap(), vec![0.0, 0.0]);
        let d = Matrix::diag(&[3.0, -2.0]);
        assert_eq!(singular_values(&d).unwrap(), vec![3.0, 2.0]);
    }

    #[test]
    fn rank_cases() {
        assert_eq!(rank(&Matrix::identity(5), RANK_TOL).unwrap(), 5);
        let dup = Matrix::from_rows(&[vec![1.0, 1.0], vec![2.0, 2.0], vec![3.0, 3.0]]).unwrap();
        assert_eq!(rank(&dup, RANK_TOL).unwrap(), 1);
        assert_eq!(rank(&Matrix::zeros(3, 3), RANK_TOL).unwrap(), 0);
    }

    #[test]
    fn span_of_repeated_vectors() {
        let e = Matrix::from_columns(
            3,
            &[vec![1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]],
        )
        .unwrap();
        let b = orthonormal_span(&e, RANK_TOL).unwrap();
        assert_eq!(b.shape(), (3, 2));
        let p = projector(&b);
        let expect = Matrix::diag(&[1.0, 1.0, 0.0]);
        assert!(p.sub(&expect).unwrap().max_abs() < 1e-14);

        let z = Matrix::zeros(3, 1);
        assert_eq!(orthonormal_span(&z, RANK_TOL).unwrap().cols(), 0);
    }

    #[test]
    fn wide_matrix_reconstructs() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0, 0.5, -1.0], vec![0.0, 1.0, 3.0, 2.0]]).unwrap();
        let s = svd(&m).unwrap();
        let mut rec = Matrix::zeros(2, 4);
        for k in 0..2 {
            rec.add_outer(s.singular_values[k], &s.u.col(k), &s.v.col(k));
        }
        assert!(rec.sub(&m).unwrap().max_abs() < 1e-13);
    }
}
