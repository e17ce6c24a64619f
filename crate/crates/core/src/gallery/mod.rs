//! Generators for the worked examples at a chosen truncation depth, with
//! partial-sum traces of the series involved.

mod examples;
mod trace;

pub use examples::{
    example21, example22, example31, example31_block_lower_bound, example31_in,
    example_remark22, minimal_offset, zeta_tail, BlockExample, InterleavedExample,
    RepeatedSchauderExample, EXAMPLE21_MAX_DEPTH, EXAMPLE31_MAX_DEPTH, REMARK22_MAX_DEPTH,
};
pub use trace::{harmonic, TruncatedSeriesTrace, VerdictHint, TREND_WINDOW};
