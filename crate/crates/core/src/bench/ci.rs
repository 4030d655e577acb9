use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{invalid, Result};

/// Two-sided Student-t quantile `t_{(1+level)/2, dof}`.
pub fn t_quantile(level: f64, dof: u64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(invalid(format!("confidence level {level} outside (0, 1)")));
    }
    if dof == 0 {
        return Err(invalid("Student t needs at least one degree of freedom"));
    }
    let t = StudentsT::new(0.0, 1.0, dof as f64)
        .map_err(|e| invalid(format!("Student t: {e}")))?;
    Ok(t.inverse_cdf(0.5 * (1.0 + level)))
}

fn mean_and_half_width(xs: &[f64], level: f64) -> Result<(f64, f64)> {
    if xs.len() < 2 {
        return Err(invalid(format!(
            "a confidence interval needs at least 2 values, got {}",
            xs.len()
        )));
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let half = t_quantile(level, xs.len() as u64 - 1)? * (var / n).sqrt();
    Ok((mean, half))
}

/// `mean -/+ t * s / sqrt(n)` over the given per-iteration values.
pub fn confidence_interval(xs: &[f64], level: f64) -> Result<(f64, f64)> {
    let (mean, half) = mean_and_half_width(xs, level)?;
    Ok((mean - half, mean + half))
}

pub fn ci_half_width(xs: &[f64], level: f64) -> Result<f64> {
    mean_and_half_width(xs, level).map(|(_, h)| h)
}
