//! Sample skewness and the paired-difference hypothesis tests used by the
//! sentiment comparison: Shapiro-Wilk, one-sided paired t, and Wilcoxon
//! signed-rank, plus the normality-gated cascade that picks between them.

mod cascade;
mod shapiro;
mod ttest;
mod wilcoxon;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cascade::{paired_vectors, sentiment_cascade, CascadeDecision, Metric};
pub use shapiro::shapiro_wilk;
pub use ttest::paired_t_test;
pub use wilcoxon::{
    wilcoxon_signed_rank, wilcoxon_signed_rank_with, WilcoxonMethod, EXACT_MAX_M,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    ShapiroWilk,
    PairedT,
    WilcoxonSignedRank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alternative {
    /// First sample larger than the second.
    Greater,
    Less,
    TwoSided,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ShapiroWilk => "Shapiro-Wilk",
            Method::PairedT => "paired t",
            Method::WilcoxonSignedRank => "Wilcoxon signed-rank",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub method: Method,
    pub alternative: Alternative,
    /// Sample size the statistic was computed on (for Wilcoxon, the number
    /// of nonzero differences).
    pub n: usize,
    /// Exact p-value as `numerator / denominator`, when the null
    /// distribution was enumerated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_exact: Option<(u64, u64)>,
}

/// Adjusted Fisher-Pearson skewness,
/// `n / ((n-1)(n-2)) * sum(((x_i - mean) / sd)^3)` with the (n-1)
/// standard deviation.
pub fn skewness(x: &[f64]) -> Result<f64> {
    let n = x.len();
    if n < 3 {
        return Err(Error::InsufficientData(format!(
            "skewness needs at least 3 observations, got {n}"
        )));
    }
    let nf = n as f64;
    let mean = x.iter().sum::<f64>() / nf;
    let ss: f64 = x.iter().map(|v| (v - mean).powi(2)).sum();
    let sd = (ss / (nf - 1.0)).sqrt();
    if sd.is_nan() || sd <= 0.0 || x.iter().all(|&v| v == x[0]) {
        return Err(Error::ZeroVariance("skewness of a constant sample"));
    }
    let cubes: f64 = x.iter().map(|v| ((v - mean) / sd).powi(3)).sum();
    Ok(nf / ((nf - 1.0) * (nf - 2.0)) * cubes)
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(x.iter().zip(y).map(|(a, b)| a - b).collect())
}
