//! Executable certificates for frame perturbation theorems in finite dimensions.
//!
//! Each certificate computes the hypothesis quantities of a perturbation
//! theorem, checks the hypothesis, emits the bounds the theorem predicts, and
//! compares them against the exact bounds computed spectrally.

pub mod certificates;
pub mod cli;
pub mod error;
pub mod gallery;
pub mod hilbert;
pub mod numerics;
pub mod schauder;
pub mod trials;

pub use error::{Error, Result};
