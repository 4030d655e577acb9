use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Sample mean, unbiased variance, and the moment ratios `g1`, `g2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSummary {
    pub n: u64,
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
}

/// One pass over the data with the streaming central-moment updates.
/// Skewness and kurtosis of a constant sample are reported as 0.
pub fn moments(samples: &[f64]) -> Result<MomentSummary> {
    if samples.len() < 4 {
        return Err(invalid(format!(
            "moments need at least 4 samples, got {}",
            samples.len()
        )));
    }
    let (mut n, mut mean, mut m2, mut m3, mut m4) = (0.0_f64, 0.0, 0.0, 0.0, 0.0);
    for &x in samples {
        let n1 = n;
        n += 1.0;
        let delta = x - mean;
        let delta_n = delta / n;
        let delta_n2 = delta_n * delta_n;
        let term1 = delta * delta_n * n1;
        mean += delta_n;
        m4 += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2 - 4.0 * delta_n * m3;
        m3 += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2;
        m2 += term1;
    }
    let (skewness, excess_kurtosis) = if m2 > 0.0 {
        (
            n.sqrt() * m3 / m2.powf(1.5),
            n * m4 / (m2 * m2) - 3.0,
        )
    } else {
        (0.0, 0.0)
    };
    Ok(MomentSummary {
        n: samples.len() as u64,
        mean,
        variance: m2 / (n - 1.0),
        skewness,
        excess_kurtosis,
    })
}
