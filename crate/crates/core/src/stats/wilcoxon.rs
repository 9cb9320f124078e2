use statrs::distribution::{ContinuousCDF, Normal};

use super::{check_pair, Alternative, Method, TestResult};
use crate::error::{Error, Result};

/// Largest number of nonzero differences for which the null distribution
/// is computed exactly under `WilcoxonMethod::Auto`.
pub const EXACT_MAX_M: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WilcoxonMethod {
    /// Exact for `m <= EXACT_MAX_M`, normal approximation above.
    Auto,
    Exact,
    Normal,
}

/// Signed-rank test on `x - y`. The statistic V is the rank sum of the
/// positive differences after dropping zeros; tied magnitudes share their
/// average rank.
pub fn wilcoxon_signed_rank(x: &[f64], y: &[f64], alternative: Alternative) -> Result<TestResult> {
    wilcoxon_signed_rank_with(x, y, alternative, WilcoxonMethod::Auto)
}

pub fn wilcoxon_signed_rank_with(
    x: &[f64],
    y: &[f64],
    alternative: Alternative,
    method: WilcoxonMethod,
) -> Result<TestResult> {
    let d: Vec<f64> = check_pair(x, y)?.into_iter().filter(|v| *v != 0.0).collect();
    let m = d.len();
    if m == 0 {
        return Err(Error::InsufficientData(
            "all paired differences are zero".into(),
        ));
    }
    let ranks2 = doubled_ranks(&d);
    let v2: u64 = d
        .iter()
        .zip(&ranks2)
        .filter(|(v, _)| **v > 0.0)
        .map(|(_, r)| *r)
        .sum();

    let exact = match method {
        WilcoxonMethod::Auto => m <= EXACT_MAX_M,
        WilcoxonMethod::Exact => true,
        WilcoxonMethod::Normal => false,
    };
    if exact && m > 62 {
        return Err(Error::InvalidArgument(format!(
            "exact signed-rank distribution limited to 62 differences, got {m}"
        )));
    }
    let (p_value, p_exact) = if exact {
        let (num, den) = exact_tail(&ranks2, v2, alternative);
        ((num as f64 / den as f64).min(1.0), Some((num.min(den), den)))
    } else {
        (normal_tail(&ranks2, v2, alternative), None)
    };
    Ok(TestResult {
        statistic: v2 as f64 / 2.0,
        p_value: p_value.clamp(0.0, 1.0),
        method: Method::WilcoxonSignedRank,
        alternative,
        n: m,
        p_exact,
    })
}

/// Twice the average rank of each |d|, so that tied ranks stay integral.
fn doubled_ranks(d: &[f64]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..d.len()).collect();
    order.sort_by(|&a, &b| d[a].abs().total_cmp(&d[b].abs()));
    let mut ranks = vec![0u64; d.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && d[order[j + 1]].abs() == d[order[i]].abs() {
            j += 1;
        }
        // positions i..=j hold ranks i+1..=j+1; their average doubled is i+j+2
        for &k in &order[i..=j] {
            ranks[k] = (i + j + 2) as u64;
        }
        i = j + 1;
    }
    ranks
}

/// Counts sign assignments whose doubled positive-rank sum is at least as
/// extreme as `v2`. Returns `(count, 2^m)`; two-sided counts are doubled.
fn exact_tail(ranks2: &[u64], v2: u64, alternative: Alternative) -> (u64, u64) {
    let total: u64 = ranks2.iter().sum();
    let mut dist = vec![0u64; total as usize + 1];
    dist[0] = 1;
    let mut reach = 0usize;
    for &r in ranks2 {
        let r = r as usize;
        for s in (0..=reach).rev() {
            if dist[s] > 0 {
                dist[s + r] += dist[s];
            }
        }
        reach += r;
    }
    let den = 1u64 << ranks2.len();
    let upper: u64 = dist[v2 as usize..].iter().sum();
    let lower: u64 = dist[..=v2 as usize].iter().sum();
    let num = match alternative {
        Alternative::Greater => upper,
        Alternative::Less => lower,
        Alternative::TwoSided => 2 * upper.min(lower),
    };
    (num, den)
}

fn normal_tail(ranks2: &[u64], v2: u64, alternative: Alternative) -> f64 {
    let m = ranks2.len() as f64;
    let v = v2 as f64 / 2.0;
    let mean = m * (m + 1.0) / 4.0;
    let mut sorted = ranks2.to_vec();
    sorted.sort_unstable();
    let tie_term: f64 = sorted
        .chunk_by(|a, b| a == b)
        .map(|g| {
            let t = g.len() as f64;
            t * t * t - t
        })
        .sum();
    let sd = (m * (m + 1.0) * (2.0 * m + 1.0) / 24.0 - tie_term / 48.0).sqrt();
    let norm = Normal::standard();
    match alternative {
        Alternative::Greater => norm.sf((v - mean - 0.5) / sd),
        Alternative::Less => norm.cdf((v - mean + 0.5) / sd),
        Alternative::TwoSided => (2.0 * norm.sf(((v - mean).abs() - 0.5) / sd)).min(1.0),
    }
}
