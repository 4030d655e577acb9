//! Warmup-then-measure timing of sampler/source pairings, reported as ns/op
//! with a Student-t confidence interval over measurement iterations.
//!
//! The default configuration is five 10 s warmup iterations followed by five
//! 10 s measurement iterations at 99.9 % confidence. Every timed region runs
//! on the calling thread, one pairing at a time.

mod ci;
mod render;

use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::sampler::{check_pairing, GaussianSampler, ModifiedZiggurat, Polar, Ziggurat};
use crate::source::{Lcg48, SplitMix64, UniformSource};
use crate::{SamplerId, SourceId};

pub use ci::{ci_half_width, confidence_interval, t_quantile};
pub use render::{format_cell, render_comparisons, render_table, Format, CSV_HEADER};

/// Each timer read covers at least this many calls.
pub const MIN_BATCH: u64 = 100_000;
const BATCH_TARGET: Duration = Duration::from_millis(1);
const CHECKSUM_INIT: u64 = 0xCBF2_9CE4_8422_2325;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub warmup_iters: u32,
    pub warmup_secs: f64,
    pub measure_iters: u32,
    pub measure_secs: f64,
    pub confidence: f64,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self::paper(crate::cli::DEFAULT_SEED)
    }
}

impl BenchConfig {
    /// 5 x 10 s warmup, 5 x 10 s measurement, 99.9 % intervals.
    pub fn paper(seed: u64) -> Self {
        BenchConfig {
            warmup_iters: 5,
            warmup_secs: 10.0,
            measure_iters: 5,
            measure_secs: 10.0,
            confidence: 0.999,
            seed,
        }
    }

    /// 2 x 0.1 s warmup and measurement, for CI.
    pub fn smoke(seed: u64) -> Self {
        BenchConfig {
            warmup_iters: 2,
            warmup_secs: 0.1,
            measure_iters: 2,
            measure_secs: 0.1,
            confidence: 0.999,
            seed,
        }
    }

    pub fn for_profile(profile: Profile, seed: u64) -> Self {
        match profile {
            Profile::Paper => Self::paper(seed),
            Profile::Smoke => Self::smoke(seed),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.measure_iters < 2 {
            return Err(invalid("at least two measurement iterations are needed for a CI"));
        }
        if !(self.measure_secs > 0.0) || !(self.warmup_secs > 0.0) {
            return Err(invalid("iteration durations must be positive"));
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(invalid(format!(
                "confidence {} outside (0, 1)",
                self.confidence
            )));
        }
        Ok(())
    }

    /// Wall time spent in warmup and measurement for one pairing.
    pub fn budget(&self) -> Duration {
        Duration::from_secs_f64(
            self.warmup_iters as f64 * self.warmup_secs
                + self.measure_iters as f64 * self.measure_secs,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Paper,
    Smoke,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paper" => Ok(Profile::Paper),
            "smoke" => Ok(Profile::Smoke),
            other => Err(invalid(format!("unknown profile `{other}` (expected paper or smoke)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchResult {
    pub sampler_id: SamplerId,
    pub source_id: SourceId,
    pub ns_per_op: f64,
    pub ci_half_width: f64,
    pub per_iteration_ns_per_op: Vec<f64>,
    pub ops_total: u64,
    /// Fold of every generated deviate; keeps the sampler calls observable.
    pub checksum: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub baseline: BenchResult,
    pub candidate: BenchResult,
    pub percent_faster: f64,
}

impl ComparisonRow {
    pub fn new(baseline: BenchResult, candidate: BenchResult) -> Result<Self> {
        let percent_faster = percent_faster(baseline.ns_per_op, candidate.ns_per_op)?;
        Ok(ComparisonRow {
            baseline,
            candidate,
            percent_faster,
        })
    }
}

/// `100 * (1 - candidate / baseline)`.
pub fn percent_faster(baseline_ns: f64, candidate_ns: f64) -> Result<f64> {
    if !(baseline_ns > 0.0 && candidate_ns > 0.0) {
        return Err(invalid(format!(
            "timings must be positive, got baseline {baseline_ns} and candidate {candidate_ns}"
        )));
    }
    Ok(100.0 * (1.0 - candidate_ns / baseline_ns))
}

/// For every source, compares each non-baseline sampler against the
/// baseline sampler's result on the same source.
pub fn comparisons(results: &[BenchResult], baseline: SamplerId) -> Result<Vec<ComparisonRow>> {
    let mut rows = Vec::new();
    for base in results.iter().filter(|r| r.sampler_id == baseline) {
        for cand in results
            .iter()
            .filter(|r| r.source_id == base.source_id && r.sampler_id != baseline)
        {
            rows.push(ComparisonRow::new(base.clone(), cand.clone())?);
        }
    }
    Ok(rows)
}

#[inline]
pub fn fold_checksum(acc: u64, x: f64) -> u64 {
    (acc ^ x.to_bits()).wrapping_mul(0x0000_0100_0000_01B3)
}

/// Smallest observable step of the monotonic clock.
pub fn timer_resolution() -> Duration {
    let mut best = Duration::MAX;
    for _ in 0..200 {
        let a = Instant::now();
        let mut b = Instant::now();
        let mut spins = 0;
        while b == a && spins < 1_000_000 {
            b = Instant::now();
            spins += 1;
        }
        if b > a {
            best = best.min(b - a);
        }
    }
    best
}

fn check_timer() -> Result<()> {
    let res = timer_resolution();
    if res > Duration::from_micros(1) {
        return Err(Error::Environment(format!(
            "timer resolution {res:?} is coarser than 1 µs"
        )));
    }
    Ok(())
}

struct Timing {
    per_iteration: Vec<f64>,
    ops_total: u64,
    checksum: u64,
}

#[inline(never)]
fn run_batch<S: UniformSource, G: GaussianSampler>(
    src: &mut S,
    sampler: &mut G,
    batch: u64,
    mut acc: u64,
) -> u64 {
    for _ in 0..batch {
        acc = fold_checksum(acc, sampler.next_gaussian(src));
    }
    acc
}

fn timed_iteration<S: UniformSource, G: GaussianSampler>(
    src: &mut S,
    sampler: &mut G,
    batch: u64,
    secs: f64,
    acc: &mut u64,
) -> (Duration, u64) {
    let budget = Duration::from_secs_f64(secs);
    let start = Instant::now();
    let mut ops = 0;
    loop {
        *acc = run_batch(src, sampler, batch, *acc);
        ops += batch;
        let elapsed = start.elapsed();
        if elapsed >= budget {
            return (elapsed, ops);
        }
    }
}

fn time_pairing<S: UniformSource, G: GaussianSampler>(
    mut src: S,
    mut sampler: G,
    cfg: &BenchConfig,
) -> Timing {
    let mut acc = CHECKSUM_INIT;

    // Calibrate the batch once, then warm up with it.
    let start = Instant::now();
    acc = run_batch(&mut src, &mut sampler, MIN_BATCH, acc);
    let per_op = start.elapsed().as_secs_f64() / MIN_BATCH as f64;
    let batch = ((BATCH_TARGET.as_secs_f64() / per_op.max(1e-12)) as u64).max(MIN_BATCH);

    for _ in 0..cfg.warmup_iters {
        timed_iteration(&mut src, &mut sampler, batch, cfg.warmup_secs, &mut acc);
    }

    let mut checksum = CHECKSUM_INIT;
    let mut per_iteration = Vec::with_capacity(cfg.measure_iters as usize);
    let mut ops_total = 0;
    for _ in 0..cfg.measure_iters {
        let (elapsed, ops) =
            timed_iteration(&mut src, &mut sampler, batch, cfg.measure_secs, &mut checksum);
        per_iteration.push(elapsed.as_nanos() as f64 / ops as f64);
        ops_total += ops;
    }
    // Warmup output feeds the witness too, so no call is dead code.
    Timing {
        per_iteration,
        ops_total,
        checksum: checksum ^ acc.rotate_left(32),
    }
}

fn dispatch<S: UniformSource>(src: S, sampler: SamplerId, cfg: &BenchConfig) -> Timing {
    match sampler {
        SamplerId::Polar => time_pairing(src, Polar::new(), cfg),
        SamplerId::Ziggurat => time_pairing(src, Ziggurat::new(), cfg),
        SamplerId::ModifiedZiggurat => time_pairing(src, ModifiedZiggurat::new(), cfg),
    }
}

/// Times one sanctioned pairing. The modified ziggurat over the LCG is
/// refused; see [`run_benchmark_forced`].
pub fn run_benchmark(sampler: SamplerId, source: SourceId, cfg: &BenchConfig) -> Result<BenchResult> {
    check_pairing(source, sampler)?;
    run_benchmark_forced(sampler, source, cfg)
}

/// Times a pairing without the low-bit safety gate.
pub fn run_benchmark_forced(
    sampler: SamplerId,
    source: SourceId,
    cfg: &BenchConfig,
) -> Result<BenchResult> {
    cfg.validate()?;
    check_timer()?;
    let timing = match source {
        SourceId::Lcg48 => dispatch(Lcg48::new(cfg.seed), sampler, cfg),
        SourceId::SplitMix => dispatch(SplitMix64::new(cfg.seed), sampler, cfg),
        SourceId::Scripted => {
            return Err(invalid("a scripted source cannot be benchmarked"));
        }
    };
    let ns_per_op = timing.per_iteration.iter().sum::<f64>() / timing.per_iteration.len() as f64;
    let ci_half_width = ci_half_width(&timing.per_iteration, cfg.confidence)?;
    Ok(BenchResult {
        sampler_id: sampler,
        source_id: source,
        ns_per_op,
        ci_half_width,
        per_iteration_ns_per_op: timing.per_iteration,
        ops_total: timing.ops_total,
        checksum: timing.checksum,
        seed: cfg.seed,
    })
}

/// All sanctioned (source, sampler) pairings over the seedable sources.
pub fn sanctioned_grid() -> Vec<(SourceId, SamplerId)> {
    SourceId::SEEDED
        .iter()
        .flat_map(|&src| SamplerId::ALL.iter().map(move |&s| (src, s)))
        .filter(|&(src, s)| crate::sampler::is_sanctioned(src, s))
        .collect()
}
