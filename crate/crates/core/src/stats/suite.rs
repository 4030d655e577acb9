use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::sampler::{AnySampler, GaussianSampler, ModifiedZiggurat, SamplerId};
use crate::source::UniformSource;

use super::{
    chi_square_gof, equal_probability_edges, ks_test, layer_occupancy_chi_square, moments,
    normal_cdf, GofReport, MomentSummary, Verdict, DEFAULT_ALPHA,
};

/// Equal-probability bins in the normality chi-square.
pub const NORMALITY_BINS: usize = 100;

/// Moment tolerances as multiples of `1 / sqrt(n)`; at `n = 10^6` they are
/// 0.004, 0.01, 0.01 and 0.05.
pub const MEAN_TOL: f64 = 4.0;
pub const VARIANCE_TOL: f64 = 10.0;
pub const SKEW_TOL: f64 = 10.0;
pub const KURTOSIS_TOL: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub value: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

impl Gate {
    fn within(value: f64, tolerance: f64) -> Self {
        Gate {
            value,
            tolerance,
            verdict: Verdict::from_pass(value.abs() < tolerance),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentGates {
    pub mean: Gate,
    pub variance_minus_one: Gate,
    pub skewness: Gate,
    pub excess_kurtosis: Gate,
}

impl MomentGates {
    pub fn evaluate(m: &MomentSummary) -> Self {
        let root_n = (m.n as f64).sqrt();
        MomentGates {
            mean: Gate::within(m.mean, MEAN_TOL / root_n),
            variance_minus_one: Gate::within(m.variance - 1.0, VARIANCE_TOL / root_n),
            skewness: Gate::within(m.skewness, SKEW_TOL / root_n),
            excess_kurtosis: Gate::within(m.excess_kurtosis, KURTOSIS_TOL / root_n),
        }
    }

    pub fn passed(&self) -> bool {
        [
            self.mean,
            self.variance_minus_one,
            self.skewness,
            self.excess_kurtosis,
        ]
        .iter()
        .all(|g| g.verdict.passed())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KsGate {
    pub d_statistic: f64,
    pub n: u64,
    pub critical_value: f64,
    pub alpha: f64,
    pub verdict: Verdict,
}

/// Everything `verify` checks for one sampler/source pairing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub source: String,
    pub sampler: SamplerId,
    pub seed: Option<u64>,
    pub n: u64,
    pub moments: MomentSummary,
    pub moment_gates: MomentGates,
    pub ks: KsGate,
    pub chi_square: GofReport,
    /// Present for the modified ziggurat only.
    pub layer_occupancy: Option<GofReport>,
    pub passed: bool,
}

/// Draws `n` deviates and runs the moment, KS and 100-bin chi-square gates
/// at `alpha = 0.001`. For the modified ziggurat, a second copy of the
/// source (cloned before any draws) feeds an `n`-call layer-occupancy test.
pub fn verify_normality<S>(
    src: &mut S,
    source_name: &str,
    sampler: SamplerId,
    n: u64,
    seed: Option<u64>,
) -> Result<NormalityReport>
where
    S: UniformSource + Clone,
{
    let mut occupancy_src = (sampler == SamplerId::ModifiedZiggurat).then(|| src.clone());

    let mut g = AnySampler::new(sampler);
    let mut xs = Vec::with_capacity(n as usize);
    for _ in 0..n {
        xs.push(g.try_next_gaussian(src)?);
    }

    let m = moments(&xs)?;
    let moment_gates = MomentGates::evaluate(&m);

    let phi = |x: f64| normal_cdf(x).unwrap_or(if x > 0.0 { 1.0 } else { 0.0 });
    let ks = ks_test(&xs, phi)?;
    let ks = KsGate {
        d_statistic: ks.d_statistic,
        n: ks.n,
        critical_value: ks.critical_value(DEFAULT_ALPHA),
        alpha: DEFAULT_ALPHA,
        verdict: Verdict::from_pass(ks.passes_at(DEFAULT_ALPHA)),
    };

    let edges = equal_probability_edges(NORMALITY_BINS)?;
    let mut chi_square = chi_square_gof(&xs, &edges, phi)?.with_test("normal-chi-square-100");
    if let Some(seed) = seed {
        chi_square = chi_square.with_seed(seed);
    }

    let layer_occupancy = match occupancy_src.as_mut() {
        Some(osrc) => {
            let mut r = layer_occupancy_chi_square(osrc, &mut ModifiedZiggurat::new(), n)?;
            r.seed = seed;
            Some(r)
        }
        None => None,
    };

    let passed = moment_gates.passed()
        && ks.verdict.passed()
        && chi_square.verdict.passed()
        && layer_occupancy.as_ref().is_none_or(|r| r.verdict.passed());

    Ok(NormalityReport {
        source: source_name.to_string(),
        sampler,
        seed,
        n,
        moments: m,
        moment_gates,
        ks,
        chi_square,
        layer_occupancy,
        passed,
    })
}
