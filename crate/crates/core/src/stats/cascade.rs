use serde::{Deserialize, Serialize};

use super::{paired_t_test, shapiro_wilk, wilcoxon_signed_rank, Alternative, Method, TestResult};
use crate::error::{Error, Result};
use crate::sentiment::SentimentSummary;

/// Which per-document quantity is compared between the negative and the
/// positive side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Metric {
    /// Mean magnitude of negative hits vs. mean of positive hits. Documents
    /// lacking either polarity are left out.
    MeanMagnitude,
    /// Share of negative hits vs. share of positive hits.
    Proportion,
}

/// Outcome of the normality-gated test of H1: negative > positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeDecision {
    pub metric: Metric,
    pub alpha: f64,
    pub pairs: usize,
    /// Shapiro-Wilk on the differences; absent when it could not be computed.
    pub normality: Option<TestResult>,
    /// The test chosen by the gate.
    pub main: Option<TestResult>,
    /// The test the gate did not choose, when computable.
    pub other: Option<TestResult>,
    pub reject_null: bool,
    /// Reason the cascade could not run a test at all.
    pub degenerate: Option<String>,
    /// Reason the normality gate was unavailable.
    pub note: Option<String>,
}

/// `(negative side, positive side)` for every document usable under `metric`.
pub fn paired_vectors(summaries: &[SentimentSummary], metric: Metric) -> (Vec<f64>, Vec<f64>) {
    summaries
        .iter()
        .filter_map(|s| match metric {
            Metric::MeanMagnitude => Some((s.mean_neg?, s.mean_pos?)),
            Metric::Proportion => Some((s.prop_neg?, s.prop_pos?)),
        })
        .unzip()
}

pub fn sentiment_cascade(
    summaries: &[SentimentSummary],
    metric: Metric,
    alpha: f64,
) -> Result<CascadeDecision> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let (neg, pos) = paired_vectors(summaries, metric);
    if neg.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "sentiment cascade needs at least 3 scored documents, got {}",
            neg.len()
        )));
    }
    let mut decision = CascadeDecision {
        metric,
        alpha,
        pairs: neg.len(),
        normality: None,
        main: None,
        other: None,
        reject_null: false,
        degenerate: None,
        note: None,
    };
    let diffs: Vec<f64> = neg.iter().zip(&pos).map(|(a, b)| a - b).collect();
    if diffs.iter().all(|&d| d == 0.0) {
        decision.degenerate = Some("all paired differences are zero".into());
        return Ok(decision);
    }

    match shapiro_wilk(&diffs) {
        Ok(sw) => decision.normality = Some(sw),
        Err(e) => decision.note = Some(format!("normality gate unavailable: {e}")),
    }
    let normal = decision
        .normality
        .as_ref()
        .is_some_and(|sw| sw.p_value > alpha);
    let t = paired_t_test(&neg, &pos, Alternative::Greater).ok();
    let w = wilcoxon_signed_rank(&neg, &pos, Alternative::Greater).ok();
    let (main, other) = if normal { (t, w) } else { (w, t) };
    decision.reject_null = main.as_ref().is_some_and(|r| r.p_value < alpha);
    decision.main = main;
    decision.other = other;
    Ok(decision)
}

impl CascadeDecision {
    pub fn branch(&self) -> Option<Method> {
        self.main.as_ref().map(|r| r.method)
    }
}
