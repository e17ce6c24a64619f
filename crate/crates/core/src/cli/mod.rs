//! Command-line front end: `bounds`, `certify`, `gallery` and `gap`.
//!
//! Reports go to standard output as JSON, diagnostics to standard error.
//! Exit codes: 0 certified or success, 1 hypothesis failed, 3 enclosure
//! failed, 2 for invalid input.

mod files;
mod gallery;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

pub use files::{CliError, FamilyFile};

use crate::certificates::{
    christensen_certificate, christensen_mu_exact, favier_zalik_certificate, gap_certificate,
    near_riesz_excess_certificate, paley_wiener_certificate, quadratic_closeness_check,
    riesz_sequence_certificate, thm21_certificate, CertificateReport, Outcome, SamplingOptions,
    TheoremId,
};
use crate::error::Error;
use crate::hilbert::{excess, frame_bounds, frame_sequence_bounds, gap_analysis, riesz_bounds, span_rank};
use crate::numerics::PNorm;
use crate::schauder::{thm31_certificate, thm33_certificate, thm34_certificate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_HYPOTHESIS_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_ENCLOSURE_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "framecert", version, about = "Frame perturbation certificates in finite dimensions")]
pub struct Cli {
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frame, Riesz and frame-sequence bounds, excess and rank of a family.
    Bounds { file: PathBuf },

    /// Run one perturbation certificate on a base and a perturbed family.
    Certify {
        /// pw, christensen, thm21, fz, qc, nearriesz, gap, riesz, thm31, thm33 or thm34.
        theorem: String,
        base: PathBuf,
        perturbed: PathBuf,
        /// λ for christensen (default 0).
        #[arg(long)]
        lambda: Option<f64>,
        /// μ for christensen (default: the exact value for λ = 0).
        #[arg(long)]
        mu: Option<f64>,
        /// Norm exponent for the Schauder theorems: 1, 2 or inf.
        #[arg(long)]
        p: Option<PNorm>,
        /// Sample count for the randomized checks.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },

    /// Export a worked example and a summary of its traces.
    Gallery {
        /// ex21, remark22, ex22, ex31 or dichotomy.
        name: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value = "gallery-out")]
        out: PathBuf,
        /// Norm exponent for ex31.
        #[arg(long)]
        p: Option<PNorm>,
    },

    /// Gap from span(K) to span(L).
    Gap { k: PathBuf, l: PathBuf },
}

/// Parses `args` and runs the command, writing to `out`; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, err) {
        Ok((value, code)) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("JSON value"));
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report serializes")
}

pub fn outcome_code(report: &CertificateReport) -> i32 {
    match report.outcome() {
        Outcome::Certified => EXIT_OK,
        Outcome::HypothesisFailed => EXIT_HYPOTHESIS_FAILED,
        Outcome::EnclosureFailed => EXIT_ENCLOSURE_FAILED,
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<(serde_json::Value, i32), CliError> {
    match &cli.command {
        Command::Bounds { file } => Ok((cmd_bounds(&FamilyFile::load(file)?)?, EXIT_OK)),
        Command::Certify { theorem, base, perturbed, lambda, mu, p, samples } => {
            let theorem: TheoremId = theorem.parse()?;
            let base = FamilyFile::load(base)?;
            let perturbed = FamilyFile::load(perturbed)?;
            let opts = SamplingOptions { seed: cli.seed, samples: *samples };
            let report = cmd_certify(theorem, &base, &perturbed, *lambda, *mu, *p, opts)?;
            let code = outcome_code(&report);
            if code == EXIT_ENCLOSURE_FAILED {
                let _ = writeln!(err, "warning: predicted bounds do not enclose the actual ones");
            }
            Ok((to_value(&report), code))
        }
        Command::Gallery { name, depth, out, p } => {
            let summary = gallery::cmd_gallery(name, *depth, out, p.unwrap_or_default(), cli.seed)?;
            for f in summary.files.iter() {
                let _ = writeln!(err, "wrote {}", out.join(f).display());
            }
            Ok((summary.value, EXIT_OK))
        }
        Command::Gap { k, l } => Ok((cmd_gap(&FamilyFile::load(k)?, &FamilyFile::load(l)?)?, EXIT_OK)),
    }
}

pub fn cmd_bounds(file: &FamilyFile) -> Result<serde_json::Value, Error> {
    let f = file.family()?;
    let fb = frame_bounds(&f)?;
    let rb = riesz_bounds(&f)?;
    let seq = if f.is_all_zero() { None } else { Some(frame_sequence_bounds(&f)?) };
    Ok(json!({
        "frame_bounds": fb.bounds,
        "is_frame": fb.is_frame,
        "riesz_bounds": rb.bounds,
        "is_riesz": rb.is_riesz,
        "sequence_bounds": seq,
        "excess": excess(&f)?,
        "rank": span_rank(&f)?,
    }))
}

pub fn cmd_gap(k: &FamilyFile, l: &FamilyFile) -> Result<serde_json::Value, Error> {
    let g = gap_analysis(&k.family()?, &l.family()?)?;
    Ok(json!({
        "delta": g.delta.value(),
        "dim_K": g.dim_k,
        "dim_L": g.dim_l,
        "sigma_min_projection": g.sigma_min_projection,
    }))
}

pub fn cmd_certify(
    theorem: TheoremId,
    base: &FamilyFile,
    perturbed: &FamilyFile,
    lambda: Option<f64>,
    mu: Option<f64>,
    p: Option<PNorm>,
    opts: SamplingOptions,
) -> Result<CertificateReport, Error> {
    if base.dimension != perturbed.dimension {
        return Err(Error::DimensionMismatch { left: base.dimension, right: perturbed.dimension });
    }
    if theorem.is_schauder() {
        let pair = base.pair(p)?;
        return match theorem {
            TheoremId::Thm31 => thm31_certificate(&pair, &perturbed.vectors, opts),
            TheoremId::Thm33 => thm33_certificate(&pair, &perturbed.vectors, opts),
            _ => {
                let g = perturbed.functionals.as_ref().unwrap_or(&perturbed.vectors);
                thm34_certificate(&pair, g)
            }
        };
    }
    let f = base.family()?;
    let h = perturbed.family()?;
    let dual = base.dual_family()?;
    match theorem {
        TheoremId::PaleyWiener => paley_wiener_certificate(&f, &h),
        TheoremId::Christensen => {
            let lambda = lambda.unwrap_or(0.0);
            let mu = match mu {
                Some(m) => m,
                None if lambda == 0.0 => christensen_mu_exact(&f, &h)?,
                None => 0.0,
            };
            christensen_certificate(&f, &h, lambda, mu, opts)
        }
        TheoremId::Thm21 => thm21_certificate(&f, &h, dual.as_ref()),
        TheoremId::FavierZalik => favier_zalik_certificate(&f, &h),
        TheoremId::QuadraticCloseness => quadratic_closeness_check(&f, &h),
        TheoremId::NearRiesz => near_riesz_excess_certificate(&f, &h),
        TheoremId::Gap => gap_certificate(&f, &h, dual.as_ref()),
        TheoremId::Riesz => riesz_sequence_certificate(&f, &h),
        TheoremId::Thm31 | TheoremId::Thm33 | TheoremId::Thm34 => unreachable!("handled above"),
    }
}
