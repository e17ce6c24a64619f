use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gallery::TruncatedSeriesTrace;
use crate::hilbert::FrameBounds;

/// Absolute slack used for every enclosure and inequality check.
pub const ENCLOSURE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// Basis perturbation with `‖Σc(x−y)‖ ≤ λ‖Σcx‖`.
    PaleyWiener,
    Christensen,
    /// Frame perturbation under `Σ‖f−h‖‖g‖ < 1`.
    Thm21,
    FavierZalik,
    QuadraticCloseness,
    NearRiesz,
    Gap,
    Riesz,
    Thm31,
    Thm33,
    Thm34,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::PaleyWiener,
        TheoremId::Christensen,
        TheoremId::Thm21,
        TheoremId::FavierZalik,
        TheoremId::QuadraticCloseness,
        TheoremId::NearRiesz,
        TheoremId::Gap,
        TheoremId::Riesz,
        TheoremId::Thm31,
        TheoremId::Thm33,
        TheoremId::Thm34,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::PaleyWiener => "pw",
            TheoremId::Christensen => "christensen",
            TheoremId::Thm21 => "thm21",
            TheoremId::FavierZalik => "fz",
            TheoremId::QuadraticCloseness => "qc",
            TheoremId::NearRiesz => "nearriesz",
            TheoremId::Gap => "gap",
            TheoremId::Riesz => "riesz",
            TheoremId::Thm31 => "thm31",
            TheoremId::Thm33 => "thm33",
            TheoremId::Thm34 => "thm34",
        }
    }

    pub fn is_schauder(self) -> bool {
        matches!(self, TheoremId::Thm31 | TheoremId::Thm33 | TheoremId::Thm34)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Per-theorem side value attached to a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Extra {
    Flag(bool),
    Count(usize),
    Number(f64),
    Text(String),
}

impl From<bool> for Extra {
    fn from(v: bool) -> Self {
        Extra::Flag(v)
    }
}

impl From<usize> for Extra {
    fn from(v: usize) -> Self {
        Extra::Count(v)
    }
}

impl From<f64> for Extra {
    fn from(v: f64) -> Self {
        Extra::Number(v)
    }
}

impl From<&str> for Extra {
    fn from(v: &str) -> Self {
        Extra::Text(v.to_string())
    }
}

/// How a certificate run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Hypothesis holds and every prediction was confirmed.
    Certified,
    HypothesisFailed,
    /// Hypothesis holds but a prediction was violated: a soundness bug.
    EnclosureFailed,
}

/// Result of running one perturbation certificate.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub theorem: TheoremId,
    pub hypothesis_values: BTreeMap<String, f64>,
    pub hypothesis_ok: bool,
    /// Bounds the theorem predicts; absent when the hypothesis fails.
    pub predicted: Option<FrameBounds>,
    /// Exact bounds of the perturbed object.
    pub actual: FrameBounds,
    /// Predicted bounds enclose the actual ones and every side check passed.
    /// Only set when the hypothesis holds.
    pub enclosed: Option<bool>,
    pub extras: BTreeMap<String, Extra>,
    pub series_traces: BTreeMap<String, TruncatedSeriesTrace>,
}

impl CertificateReport {
    pub fn outcome(&self) -> Outcome {
        match (self.hypothesis_ok, self.enclosed) {
            (false, _) => Outcome::HypothesisFailed,
            (true, Some(true)) => Outcome::Certified,
            (true, _) => Outcome::EnclosureFailed,
        }
    }

    pub fn value(&self, name: &str) -> f64 {
        self.hypothesis_values[name]
    }

    pub fn extra_number(&self, name: &str) -> Option<f64> {
        match self.extras.get(name)? {
            Extra::Number(v) => Some(*v),
            Extra::Count(c) => Some(*c as f64),
            _ => None,
        }
    }

    pub fn extra_flag(&self, name: &str) -> Option<bool> {
        match self.extras.get(name)? {
            Extra::Flag(v) => Some(*v),
            _ => None,
        }
    }
}

/// Accumulates the pieces of a report; `finish` applies the enclosure rule.
pub(crate) struct ReportBuilder {
    theorem: TheoremId,
    values: BTreeMap<String, f64>,
    extras: BTreeMap<String, Extra>,
    traces: BTreeMap<String, TruncatedSeriesTrace>,
    side_checks_ok: bool,
}

impl ReportBuilder {
    pub fn new(theorem: TheoremId) -> Self {
        Self {
            theorem,
            values: BTreeMap::new(),
            extras: BTreeMap::new(),
            traces: BTreeMap::new(),
            side_checks_ok: true,
        }
    }

    pub fn value(&mut self, name: &str, v: f64) -> &mut Self {
        debug_assert!(v.is_finite(), "hypothesis value {name} = {v}");
        self.values.insert(name.to_string(), v);
        self
    }

    pub fn extra(&mut self, name: &str, v: impl Into<Extra>) -> &mut Self {
        self.extras.insert(name.to_string(), v.into());
        self
    }

    pub fn trace(&mut self, name: &str, t: TruncatedSeriesTrace) -> &mut Self {
        self.traces.insert(name.to_string(), t);
        self
    }

    /// Records a named pass/fail side check that must hold for `enclosed`.
    pub fn check(&mut self, name: &str, ok: bool) -> &mut Self {
        self.side_checks_ok &= ok;
        self.extra(name, ok)
    }

    pub fn finish(
        self,
        hypothesis_ok: bool,
        predicted: FrameBounds,
        actual: FrameBounds,
    ) -> CertificateReport {
        let (predicted, enclosed) = if hypothesis_ok {
            let ok = predicted.encloses(&actual, ENCLOSURE_SLACK) && self.side_checks_ok;
            (Some(predicted), Some(ok))
        } else {
            (None, None)
        };
        CertificateReport {
            theorem: self.theorem,
            hypothesis_values: self.values,
            hypothesis_ok,
            predicted,
            actual,
            enclosed,
            extras: self.extras,
            series_traces: self.traces,
        }
    }
}
