//! Perturbation certificates for frames, bases and frame sequences in `R^d`.
//!
//! Each certificate computes its hypothesis quantities, decides whether the
//! hypothesis holds, predicts bounds for the perturbed family and compares
//! them with the exact bounds from [`crate::hilbert`].

mod dichotomy;
mod hilbert;
mod report;

pub use dichotomy::{frame_extension_dichotomy, DichotomyReport};
pub use hilbert::{
    christensen_certificate, christensen_lambda_exact, christensen_mu_exact,
    favier_zalik_certificate, gap_certificate, near_riesz_excess_certificate,
    paley_wiener_certificate, paley_wiener_lambda, quadratic_closeness_check,
    riesz_sequence_certificate, thm21_certificate, SamplingOptions, DUAL_TOL,
};
pub use report::{CertificateReport, Extra, Outcome, TheoremId, ENCLOSURE_SLACK};
pub(crate) use report::ReportBuilder;
