use statrs::distribution::{ContinuousCDF, StudentsT};

use super::{check_pair, Alternative, Method, TestResult};
use crate::error::{Error, Result};

/// Paired t test on `d = x - y` with `n - 1` degrees of freedom.
pub fn paired_t_test(x: &[f64], y: &[f64], alternative: Alternative) -> Result<TestResult> {
    let d = check_pair(x, y)?;
    let n = d.len();
    if n < 2 {
        return Err(Error::InsufficientData(format!(
            "paired t test needs at least 2 pairs, got {n}"
        )));
    }
    let nf = n as f64;
    let mean = d.iter().sum::<f64>() / nf;
    let var = d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (nf - 1.0);
    if var.is_nan() || var <= 0.0 || d.iter().all(|&v| v == d[0]) {
        return Err(Error::ZeroVariance("paired differences are all identical"));
    }
    let t = mean / (var / nf).sqrt();
    let dist = StudentsT::new(0.0, 1.0, nf - 1.0)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let p = match alternative {
        Alternative::Greater => dist.sf(t),
        Alternative::Less => dist.cdf(t),
        Alternative::TwoSided => 2.0 * dist.sf(t.abs()),
    };
    Ok(TestResult {
        statistic: t,
        p_value: p.clamp(0.0, 1.0),
        method: Method::PairedT,
        alternative,
        n,
        p_exact: None,
    })
}
