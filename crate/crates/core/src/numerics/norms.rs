use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{svd, Matrix};
use crate::error::{Error, Result};

/// The exponents whose induced operator norms are exactly computable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PNorm {
    One,
    #[default]
    Two,
    Inf,
}

impl PNorm {
    pub fn from_f64(p: f64) -> Result<Self> {
        if p == 1.0 {
            Ok(PNorm::One)
        } else if p == 2.0 {
            Ok(PNorm::Two)
        } else if p == f64::INFINITY {
            Ok(PNorm::Inf)
        } else {
            Err(Error::UnsupportedNorm(p.to_string()))
        }
    }

    /// Hölder conjugate exponent (1 ↔ ∞, 2 ↔ 2).
    pub fn dual(self) -> Self {
        match self {
            PNorm::One => PNorm::Inf,
            PNorm::Two => PNorm::Two,
            PNorm::Inf => PNorm::One,
        }
    }

    pub fn vector_norm(self, v: &[f64]) -> f64 {
        match self {
            PNorm::One => v.iter().map(|x| x.abs()).sum(),
            PNorm::Two => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            PNorm::Inf => v.iter().fold(0.0, |m, x| m.max(x.abs())),
        }
    }
}

impl fmt::Display for PNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PNorm::One => "1",
            PNorm::Two => "2",
            PNorm::Inf => "inf",
        })
    }
}

impl FromStr for PNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" => Ok(PNorm::One),
            "2" => Ok(PNorm::Two),
            "inf" | "infinity" | "∞" => Ok(PNorm::Inf),
            other => Err(Error::UnsupportedNorm(other.to_string())),
        }
    }
}

// JSON form: the numbers 1 and 2, or the string "inf".
impl Serialize for PNorm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PNorm::One => s.serialize_u8(1),
            PNorm::Two => s.serialize_u8(2),
            PNorm::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for PNorm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(d)? {
            Raw::Num(p) => PNorm::from_f64(p),
            Raw::Text(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// Induced operator norm `‖m‖_{p→p}`.
///
/// p = 1 is the largest absolute column sum, p = ∞ the largest absolute row
/// sum, and p = 2 the largest singular value.
pub fn op_norm(m: &Matrix, p: PNorm) -> Result<f64> {
    Ok(match p {
        PNorm::One => (0..m.cols())
            .map(|j| (0..m.rows()).map(|i| m[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max),
        PNorm::Inf => (0..m.rows())
            .map(|i| m.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max),
        PNorm::Two => svd(m)?.max(),
    })
}

/// [`op_norm`] with a numeric exponent; anything but 1, 2, ∞ is rejected.
pub fn op_norm_p(m: &Matrix, p: f64) -> Result<f64> {
    op_norm(m, PNorm::from_f64(p)?)
}
