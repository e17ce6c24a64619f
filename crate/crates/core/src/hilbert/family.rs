use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{norm2, sub_vec, Matrix};

/// Ordered, non-empty list of vectors in `R^d`. Zero vectors are allowed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFamily", into = "RawFamily")]
pub struct VectorFamily {
    dim: usize,
    vectors: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct RawFamily {
    dimension: usize,
    vectors: Vec<Vec<f64>>,
}

impl TryFrom<RawFamily> for VectorFamily {
    type Error = Error;

    fn try_from(raw: RawFamily) -> Result<Self> {
        VectorFamily::new(raw.dimension, raw.vectors)
    }
}

impl From<VectorFamily> for RawFamily {
    fn from(f: VectorFamily) -> Self {
        RawFamily { dimension: f.dim, vectors: f.vectors }
    }
}

impl VectorFamily {
    pub fn new(dim: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        for (k, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { left: v.len(), right: dim });
            }
            if let Some(j) = v.iter().position(|x| !x.is_finite()) {
                return Err(Error::NonFinite { row: j, col: k, value: v[j] });
            }
        }
        Ok(Self { dim, vectors })
    }

    /// Columns of `m` as a family in `R^{rows}`.
    pub fn from_columns(m: &Matrix) -> Result<Self> {
        Self::new(m.rows(), m.columns())
    }

    /// `e_1, …, e_d`.
    pub fn standard_basis(dim: usize) -> Self {
        let vectors = (0..dim).map(|j| unit(dim, j)).collect();
        Self { dim, vectors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn get(&self, k: usize) -> &[f64] {
        &self.vectors[k]
    }

    pub fn into_vectors(self) -> Vec<Vec<f64>> {
        self.vectors
    }

    pub fn is_all_zero(&self) -> bool {
        self.vectors.iter().all(|v| v.iter().all(|&x| x == 0.0))
    }

    pub fn norms(&self) -> Vec<f64> {
        self.vectors.iter().map(|v| norm2(v)).collect()
    }

    /// `d x N` matrix whose column `k` is vector `k`.
    pub fn synthesis(&self) -> Matrix {
        let mut t = Matrix::zeros(self.dim, self.len());
        for (k, v) in self.vectors.iter().enumerate() {
            t.set_col(k, v);
        }
        t
    }

    /// Applies `m` to every vector.
    pub fn transform(&self, m: &Matrix) -> Result<Self> {
        if m.cols() != self.dim {
            return Err(Error::DimensionMismatch { left: m.cols(), right: self.dim });
        }
        Self::new(m.rows(), self.vectors.iter().map(|v| m.matvec(v)).collect())
    }

    pub fn scaled(&self, s: f64) -> Self {
        let vectors = self.vectors.iter().map(|v| v.iter().map(|x| x * s).collect()).collect();
        Self { dim: self.dim, vectors }
    }

    /// Family `{self_k − other_k}`.
    pub fn difference(&self, other: &VectorFamily) -> Result<Self> {
        self.check_compatible(other)?;
        let vectors = self.vectors.iter().zip(&other.vectors).map(|(a, b)| sub_vec(a, b)).collect();
        Ok(Self { dim: self.dim, vectors })
    }

    /// Same ambient dimension and same length.
    pub fn check_compatible(&self, other: &VectorFamily) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(())
    }

    /// Concatenation `self ∪ other`, keeping order.
    pub fn extended(&self, other: &VectorFamily) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let mut vectors = self.vectors.clone();
        vectors.extend(other.vectors.iter().cloned());
        Ok(Self { dim: self.dim, vectors })
    }
}

pub(crate) fn unit(dim: usize, j: usize) -> Vec<f64> {
    let mut e = vec![0.0; dim];
    e[j] = 1.0;
    e
}
