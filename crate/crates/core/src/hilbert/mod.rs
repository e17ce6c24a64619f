//! Frames, frame sequences, Riesz sequences, duals, excess and the subspace
//! gap for finite families in `R^d`.
//!
//! All bounds returned here are the optimal ones, read off the spectrum of the
//! frame operator or the singular values of the synthesis operator.

mod family;
mod frames;
mod gap;

pub use family::VectorFamily;
pub(crate) use family::unit;
pub(crate) use frames::SpanSpectrum;
pub use frames::{
    bessel_bound, canonical_dual, excess, frame_bounds, frame_operator, frame_sequence_bounds,
    riesz_bounds, span_rank, synthesis, verify_dual_pair, FrameBounds, FrameCheck, RieszCheck,
    SPAN_TOL,
};
pub use gap::{gap, gap_analysis, GapAnalysis, GapValue};
