use thiserror::Error;

/// Errors raised by the numerical kernels, the frame objects and the certificates.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix entries must be finite (found {value} at ({row}, {col}))")]
    NonFinite { row: usize, col: usize, value: f64 },

    #[error("matrix shape must be at least 1x1 (got {rows}x{cols})")]
    EmptyShape { rows: usize, cols: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NonSymmetric { asymmetry: f64 },

    #[error("iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("unsupported operator norm p = {0} (only 1, 2 and inf are exact)")]
    UnsupportedNorm(String),

    #[error("matrix is singular (rank {rank} < {dim})")]
    Singular { rank: usize, dim: usize },

    #[error("vector families differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("dimension mismatch ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("vector family must not be empty")]
    EmptyFamily,

    #[error("family contains only zero vectors")]
    ZeroFamily,

    #[error("vector {index} must be nonzero")]
    ZeroVector { index: usize },

    #[error("family is not a basis (N = {len}, rank {rank}, dimension {dim})")]
    NotABasis { len: usize, rank: usize, dim: usize },

    #[error("family is not a frame: {0}")]
    NotAFrame(String),

    #[error("supplied dual is not a dual frame (residual {residual:e})")]
    BadDual { residual: f64 },

    #[error("family is not a Riesz sequence (lower Riesz bound {lower:e})")]
    NotRiesz { lower: f64 },

    #[error("complement has dimension {codim}; at least 2 directions are needed")]
    InsufficientComplement { codim: usize },

    #[error("depth {depth} exceeds the generator cap {max}")]
    DepthTooLarge { depth: usize, max: usize },

    #[error("unknown theorem `{0}` (expected one of pw, christensen, thm21, fz, qc, nearriesz, gap, riesz, thm31, thm33, thm34)")]
    UnknownTheorem(String),

    #[error("unknown gallery `{0}` (expected one of ex21, remark22, ex22, ex31, dichotomy)")]
    UnknownGallery(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
