use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Kolmogorov-Smirnov distance between a sample and a reference CDF.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsReport {
    pub d_statistic: f64,
    pub n: u64,
}

impl KsReport {
    pub fn critical_value(&self, alpha: f64) -> f64 {
        ks_critical_value(self.n, alpha)
    }

    pub fn passes_at(&self, alpha: f64) -> bool {
        self.d_statistic < self.critical_value(alpha)
    }
}

/// Asymptotic critical value `sqrt(-ln(alpha / 2) / 2) / sqrt(n)`.
pub fn ks_critical_value(n: u64, alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt() / (n as f64).sqrt()
}

/// `D = sup |F_n - F|`, taken over both one-sided gaps at each sorted point.
pub fn ks_test<F>(samples: &[f64], cdf: F) -> Result<KsReport>
where
    F: Fn(f64) -> f64,
{
    if samples.is_empty() {
        return Err(invalid("ks_test needs at least one sample"));
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(invalid("ks_test samples contain NaN"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let d = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let above = (i + 1) as f64 / n - f;
            let below = f - i as f64 / n;
            above.max(below)
        })
        .fold(0.0_f64, f64::max);
    Ok(KsReport {
        d_statistic: d.clamp(0.0, 1.0),
        n: sorted.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::stats::{normal_cdf, normal_quantile};

    fn phi(x: f64) -> f64 {
        normal_cdf(x).unwrap()
    }

    #[test]
    fn single_point_at_median() {
        let r = ks_test(&[0.0], phi).unwrap();
        assert_eq!(r.d_statistic, 0.5);
        assert_eq!(r.n, 1);
    }

    #[test]
    fn exact_quantiles_are_close() {
        let n = 100;
        let xs: Vec<f64> = (1..=n)
            .map(|i| normal_quantile((i as f64 - 0.5) / n as f64).unwrap())
            .collect();
        let r = ks_test(&xs, phi).unwrap();
        assert!(r.d_statistic <= 0.5 / n as f64 + 1e-12);
    }

    #[test]
    fn empty_is_rejected() {
        assert!(ks_test(&[], phi).is_err());
    }

    #[test]
    fn critical_value_at_0_001() {
        // c(0.001) = sqrt(ln(2000) / 2)
        let c = ks_critical_value(1, 0.001);
        assert!((c - 1.949_474_603_520_405).abs() < 1e-12);
        assert!((ks_critical_value(10_000, 0.001) - c / 100.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn statistic_is_a_probability(xs in prop::collection::vec(-50.0f64..50.0, 1..300)) {
            let r = ks_test(&xs, phi).unwrap();
            prop_assert!((0.0..=1.0).contains(&r.d_statistic));
        }
    }
}
