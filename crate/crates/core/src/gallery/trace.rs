use serde::{Deserialize, Serialize};

/// Number of trailing truncation levels inspected by the divergence-trend test.
pub const TREND_WINDOW: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictHint {
    BoundedBelowTarget,
    ExceedsTarget,
    IncreasingUnboundedTrend,
}

/// Partial sums of a non-negative series at successive truncation levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeriesTrace {
    pub partial_sums: Vec<f64>,
    pub verdict_hint: VerdictHint,
}

impl TruncatedSeriesTrace {
    /// Partial sums of `terms`, judged only against `target`
    /// (strictly below it, or not).
    pub fn against_target(terms: &[f64], target: Option<f64>) -> Self {
        let partial_sums = partial_sums(terms);
        let verdict_hint = target_verdict(&partial_sums, target);
        Self { partial_sums, verdict_hint }
    }

    /// Like [`Self::against_target`], but first tests for a divergence trend
    /// against `comparison(n)` (1-based level `n`), the terms of a divergent
    /// reference series.
    ///
    /// The trend holds when, over the last [`TREND_WINDOW`] levels, every term
    /// is positive and the ratio `term_n / comparison(n)` never decreases: the
    /// series keeps pace with (or gains on) a series known to diverge.
    pub fn with_trend(terms: &[f64], comparison: impl Fn(usize) -> f64, target: Option<f64>) -> Self {
        let partial_sums = partial_sums(terms);
        let verdict_hint = if divergence_trend(terms, comparison) {
            VerdictHint::IncreasingUnboundedTrend
        } else {
            target_verdict(&partial_sums, target)
        };
        Self { partial_sums, verdict_hint }
    }

    pub fn last(&self) -> f64 {
        self.partial_sums.last().copied().unwrap_or(0.0)
    }

    /// Successive differences, i.e. the series terms.
    pub fn increments(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.partial_sums
            .iter()
            .map(|&s| {
                let d = s - prev;
                prev = s;
                d
            })
            .collect()
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.partial_sums.windows(2).all(|w| w[1] >= w[0])
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.partial_sums.windows(2).all(|w| w[1] > w[0])
    }
}

fn partial_sums(terms: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    terms
        .iter()
        .map(|t| {
            acc += t;
            acc
        })
        .collect()
}

fn target_verdict(partial_sums: &[f64], target: Option<f64>) -> VerdictHint {
    match (partial_sums.last(), target) {
        (Some(&last), Some(t)) if last >= t => VerdictHint::ExceedsTarget,
        _ => VerdictHint::BoundedBelowTarget,
    }
}

fn divergence_trend(terms: &[f64], comparison: impl Fn(usize) -> f64) -> bool {
    if terms.len() < TREND_WINDOW {
        return false;
    }
    let start = terms.len() - TREND_WINDOW;
    let ratios: Vec<f64> = (start..terms.len())
        .map(|i| terms[i] / comparison(i + 1))
        .collect();
    terms[start..].iter().all(|&t| t > 0.0) && ratios.windows(2).all(|w| w[1] >= w[0])
}

/// Terms of the harmonic series, the usual divergent comparison.
pub fn harmonic(n: usize) -> f64 {
    1.0 / n as f64
}
