use statrs::function::gamma::gamma_ur;

use crate::error::{invalid, Result};
use crate::sampler::{GaussianSampler, ModifiedZiggurat};
use crate::source::UniformSource;

use super::GofReport;

const MIN_EXPECTED: f64 = 5.0;

/// Upper tail of the chi-square distribution, `Q(dof / 2, x / 2)`.
pub fn chi_square_survival(statistic: f64, dof: u32) -> f64 {
    if dof == 0 || statistic.is_nan() {
        return f64::NAN;
    }
    if statistic <= 0.0 {
        return 1.0;
    }
    if statistic.is_infinite() {
        return 0.0;
    }
    gamma_ur(dof as f64 / 2.0, statistic / 2.0)
}

/// Pearson's statistic for observed counts against expected counts, with
/// `cells - 1` degrees of freedom.
pub fn chi_square_counts(observed: &[u64], expected: &[f64]) -> Result<GofReport> {
    if observed.len() != expected.len() {
        return Err(invalid("observed and expected counts differ in length"));
    }
    if observed.len() < 2 {
        return Err(invalid("chi-square needs at least two cells"));
    }
    if let Some(bad) = expected.iter().find(|&&e| !(e > 0.0) || !e.is_finite()) {
        return Err(invalid(format!("expected count {bad} is not positive")));
    }
    let statistic = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum();
    let n = observed.iter().sum();
    Ok(GofReport::new(
        "chi-square",
        statistic,
        observed.len() as u32 - 1,
        n,
    ))
}

/// Bins `samples` at `bin_edges` (interior edges, strictly increasing; the
/// outer bins are open) and compares against `cdf`. Adjacent bins are merged
/// until each expects at least five observations.
pub fn chi_square_gof<F>(samples: &[f64], bin_edges: &[f64], cdf: F) -> Result<GofReport>
where
    F: Fn(f64) -> f64,
{
    if samples.is_empty() {
        return Err(invalid("chi_square_gof needs samples"));
    }
    if bin_edges.is_empty() {
        return Err(invalid("chi_square_gof needs at least one interior edge"));
    }
    if !bin_edges.windows(2).all(|w| w[0] < w[1]) {
        return Err(invalid("bin edges must be strictly increasing"));
    }
    let n = samples.len() as f64;

    let mut observed = vec![0u64; bin_edges.len() + 1];
    for &x in samples {
        observed[bin_edges.partition_point(|&e| e < x)] += 1;
    }
    let mut cum = Vec::with_capacity(bin_edges.len() + 2);
    cum.push(0.0);
    cum.extend(bin_edges.iter().map(|&e| cdf(e)));
    cum.push(1.0);
    let expected: Vec<f64> = cum.windows(2).map(|w| n * (w[1] - w[0])).collect();

    let (mut obs, mut exp) = (Vec::new(), Vec::new());
    let (mut o_acc, mut e_acc) = (0u64, 0.0);
    for (o, e) in observed.into_iter().zip(expected) {
        o_acc += o;
        e_acc += e;
        if e_acc >= MIN_EXPECTED {
            obs.push(o_acc);
            exp.push(e_acc);
            o_acc = 0;
            e_acc = 0.0;
        }
    }
    if e_acc > 0.0 || o_acc > 0 {
        match (obs.last_mut(), exp.last_mut()) {
            (Some(o), Some(e)) => {
                *o += o_acc;
                *e += e_acc;
            }
            _ => {
                obs.push(o_acc);
                exp.push(e_acc);
            }
        }
    }
    if obs.len() < 2 {
        return Err(invalid(
            "fewer than two bins remain after merging to five expected counts",
        ));
    }
    Ok(chi_square_counts(&obs, &exp)?.with_test("chi-square-gof"))
}

/// Interior edges splitting the standard normal into `bins` cells of equal
/// probability.
pub fn equal_probability_edges(bins: usize) -> Result<Vec<f64>> {
    if bins < 2 {
        return Err(invalid("need at least two bins"));
    }
    (1..bins)
        .map(|i| super::normal_quantile(i as f64 / bins as f64))
        .collect()
}

/// Histograms the low `k_bits` of `n` draws and tests them against the
/// uniform distribution over `2^k_bits` cells.
pub fn low_bits_chi_square<S: UniformSource + ?Sized>(
    src: &mut S,
    k_bits: u32,
    n: u64,
) -> Result<GofReport> {
    if !(1..=8).contains(&k_bits) {
        return Err(invalid(format!("k = {k_bits} outside 1..=8")));
    }
    let cells = 1usize << k_bits;
    if n < 100 * cells as u64 {
        return Err(invalid(format!(
            "n = {n} is below the minimum 100 * 2^k = {}",
            100 * cells
        )));
    }
    let mask = cells as u64 - 1;
    let mut counts = vec![0u64; cells];
    for _ in 0..n {
        counts[(src.next_u64() & mask) as usize] += 1;
    }
    let expected = vec![n as f64 / cells as f64; cells];
    Ok(chi_square_counts(&counts, &expected)?.with_test(format!("low-bits-k{k_bits}")))
}

struct FirstDraw<'a, S: ?Sized> {
    inner: &'a mut S,
    first: Option<u64>,
}

impl<S: UniformSource + ?Sized> UniformSource for FirstDraw<'_, S> {
    fn next_u64(&mut self) -> u64 {
        let w = self.inner.next_u64();
        self.first.get_or_insert(w);
        w
    }
}

/// Runs `calls` modified-ziggurat draws and tests how often each layer is
/// selected by the first word of a call against the uniform expectation.
pub fn layer_occupancy_chi_square<S: UniformSource + ?Sized>(
    src: &mut S,
    sampler: &mut ModifiedZiggurat,
    calls: u64,
) -> Result<GofReport> {
    let layers = sampler.tables().n();
    if calls < 5 * layers as u64 {
        return Err(invalid(format!(
            "{calls} calls leave fewer than five expected per layer"
        )));
    }
    let mut counts = vec![0u64; layers];
    for _ in 0..calls {
        let mut tap = FirstDraw {
            inner: &mut *src,
            first: None,
        };
        sampler.try_next_gaussian(&mut tap)?;
        let first = tap.first.expect("every call draws at least once");
        counts[sampler.layer_of(first)] += 1;
    }
    let expected = vec![calls as f64 / layers as f64; layers];
    Ok(chi_square_counts(&counts, &expected)?.with_test("layer-occupancy"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::{ScriptedSource, SplitMix64};
    use crate::stats::normal_cdf;

    #[test]
    fn perfect_fit() {
        let r = chi_square_counts(&[10, 20, 30], &[10.0, 20.0, 30.0]).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert_eq!(r.dof, 2);
    }

    #[test]
    fn two_cell_hand_example() {
        let r = chi_square_counts(&[60, 40], &[50.0, 50.0]).unwrap();
        assert!((r.statistic - 4.0).abs() < 1e-12);
        assert_eq!(r.dof, 1);
        // scipy.stats.chi2.sf(4, 1)
        assert!((r.p_value - 0.045_500_263_896_358_4).abs() < 1e-10);
        assert!(r.passes_at(0.001));
        assert!(!r.passes_at(0.05));
    }

    #[test]
    fn survival_reference_values() {
        // scipy.stats.chi2.sf
        assert!((chi_square_survival(255.0, 255) - 0.488_222_521_770_406_4).abs() < 1e-10);
        assert!((chi_square_survival(10.0, 3) - 0.018_566_135_463_043_8).abs() < 1e-12);
        assert_eq!(chi_square_survival(0.0, 4), 1.0);
    }

    #[test]
    fn rejects_malformed_counts() {
        assert!(chi_square_counts(&[1], &[1.0]).is_err());
        assert!(chi_square_counts(&[1, 2], &[1.0]).is_err());
        assert!(chi_square_counts(&[1, 2], &[0.0, 3.0]).is_err());
    }

    #[test]
    fn gof_merges_sparse_tails() {
        let phi = |x: f64| normal_cdf(x).unwrap();
        let mut rng = SplitMix64::new(3);
        let mut zig = crate::Ziggurat::new();
        let xs: Vec<f64> = (0..200).map(|_| zig.next_gaussian(&mut rng)).collect();
        let edges: Vec<f64> = (-40..=40).map(|i| i as f64 * 0.1).collect();
        let r = chi_square_gof(&xs, &edges, phi).unwrap();
        // 200 samples support at most 40 cells of five expected
        assert!(r.dof < 40);
        assert!(r.dof >= 1);
        assert!(chi_square_gof(&xs, &[1.0, 0.0], phi).is_err());
        assert!(chi_square_gof(&xs[..3], &[0.0], phi).is_err());
    }

    #[test]
    fn equal_probability_edges_split_evenly() {
        let edges = equal_probability_edges(100).unwrap();
        assert_eq!(edges.len(), 99);
        assert!(edges[49].abs() < 1e-12);
        for (i, e) in edges.iter().enumerate() {
            assert!((normal_cdf(*e).unwrap() - (i + 1) as f64 / 100.0).abs() < 1e-13);
        }
    }

    #[test]
    fn all_zero_words_are_maximally_imbalanced() {
        let n = 1000u64;
        let mut src = ScriptedSource::new(vec![0; n as usize]);
        let r = low_bits_chi_square(&mut src, 2, n).unwrap();
        assert!((r.statistic - 3.0 * n as f64).abs() < 1e-9);
        assert_eq!(r.dof, 3);
        assert!(r.p_value < 1e-100);
        assert!(!r.verdict.passed());
    }

    #[test]
    fn low_bits_preconditions() {
        let mut rng = SplitMix64::new(0);
        assert!(low_bits_chi_square(&mut rng, 0, 10_000).is_err());
        assert!(low_bits_chi_square(&mut rng, 9, 1_000_000).is_err());
        assert!(low_bits_chi_square(&mut rng, 8, 25_599).is_err());
        assert!(low_bits_chi_square(&mut rng, 8, 25_600).is_ok());
    }

    #[test]
    fn layer_occupancy_counts_first_draws() {
        let mut mz = ModifiedZiggurat::new();
        // Every call fast-accepts in layer 7.
        let word = mz.compose_draw(false, 7, 1);
        let mut src = ScriptedSource::new(vec![word; 2000]);
        let r = layer_occupancy_chi_square(&mut src, &mut mz, 2000).unwrap();
        assert_eq!(src.cursor(), 2000);
        assert!(!r.verdict.passed());
        assert_eq!(r.dof, 255);
    }
}
