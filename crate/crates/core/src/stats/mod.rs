//! Goodness-of-fit machinery for certifying normal output and probing
//! low-order bit quality.

mod chi;
mod ks;
mod moments;
mod normal;
mod suite;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use chi::{
    chi_square_counts, chi_square_gof, chi_square_survival, equal_probability_edges,
    layer_occupancy_chi_square, low_bits_chi_square,
};
pub use ks::{ks_critical_value, ks_test, KsReport};
pub use moments::{moments, MomentSummary};
pub use normal::{normal_cdf, normal_quantile};
pub use suite::{
    verify_normality, Gate, KsGate, MomentGates, NormalityReport, KURTOSIS_TOL, MEAN_TOL,
    NORMALITY_BINS, SKEW_TOL, VARIANCE_TOL,
};

/// Significance level used by every pass/fail gate unless overridden.
pub const DEFAULT_ALPHA: f64 = 0.001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Outcome of a chi-square goodness-of-fit test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub test: String,
    pub statistic: f64,
    pub dof: u32,
    pub p_value: f64,
    pub alpha: f64,
    pub verdict: Verdict,
    pub n: u64,
    pub seed: Option<u64>,
}

impl GofReport {
    pub(crate) fn new(test: impl Into<String>, statistic: f64, dof: u32, n: u64) -> Self {
        let p_value = chi_square_survival(statistic, dof).clamp(0.0, 1.0);
        GofReport {
            test: test.into(),
            statistic,
            dof,
            p_value,
            alpha: DEFAULT_ALPHA,
            verdict: Verdict::from_pass(p_value > DEFAULT_ALPHA),
            n,
            seed: None,
        }
    }

    pub fn passes_at(&self, alpha: f64) -> bool {
        self.p_value > alpha
    }

    /// Re-evaluates the verdict at a different significance level.
    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self.verdict = Verdict::from_pass(self.passes_at(alpha));
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_test(mut self, test: impl Into<String>) -> Self {
        self.test = test.into();
        self
    }
}
