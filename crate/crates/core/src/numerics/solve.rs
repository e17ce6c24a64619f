use super::{svd, Matrix, RANK_TOL};
use crate::error::{Error, Result};

/// Solves `a · x = b` for square, full-rank `a` (LU with partial pivoting).
///
/// Full rank is decided on singular values at relative tolerance 1e−10, so
/// nearly singular systems are refused instead of amplified.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "solve needs a square system, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if b.rows() != a.rows() {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side has {} rows, system has {}",
            b.rows(),
            a.rows()
        )));
    }
    let n = a.rows();
    let r = svd(a)?.rank(RANK_TOL);
    if r < n {
        return Err(Error::Singular { rank: r, dim: n });
    }

    let mut lu = a.clone();
    let mut x = b.clone();
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&i, &j| lu[(i, k)].abs().total_cmp(&lu[(j, k)].abs()))
            .expect("non-empty pivot range");
        if lu[(piv, k)] == 0.0 {
            return Err(Error::Singular { rank: k, dim: n });
        }
        if piv != k {
            swap_rows(&mut lu, piv, k);
            swap_rows(&mut x, piv, k);
        }
        let d = lu[(k, k)];
        for i in (k + 1)..n {
            let f = lu[(i, k)] / d;
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                lu[(i, j)] -= f * lu[(k, j)];
            }
            for j in 0..x.cols() {
                x[(i, j)] -= f * x[(k, j)];
            }
        }
    }
    for k in (0..n).rev() {
        for j in 0..x.cols() {
            let mut acc = x[(k, j)];
            for i in (k + 1)..n {
                acc -= lu[(k, i)] * x[(i, j)];
            }
            x[(k, j)] = acc / lu[(k, k)];
        }
    }
    Ok(x)
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    solve(a, &Matrix::identity(a.rows()))
}

fn swap_rows(m: &mut Matrix, i: usize, j: usize) {
    for c in 0..m.cols() {
        let t = m[(i, c)];
        m[(i, c)] = m[(j, c)];
        m[(j, c)] = t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_system() {
        let b = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(solve(&Matrix::identity(2), &b).unwrap(), b);
    }

    #[test]
    fn diagonal_system() {
        let a = Matrix::diag(&[2.0, 4.0]);
        let b = Matrix::from_rows(&[vec![2.0], vec![4.0]]).unwrap();
        assert_eq!(solve(&a, &b).unwrap().col(0), vec![1.0, 1.0]);
    }

    #[test]
    fn singular_is_refused() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        let b = Matrix::identity(2);
        assert!(matches!(solve(&a, &b), Err(Error::Singular { rank: 1, dim: 2 })));
    }

    #[test]
    fn needs_pivoting() {
        let a = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, a);
    }
}
