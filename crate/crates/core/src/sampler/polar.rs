use crate::error::{Error, Result};
use crate::source::UniformSource;

use super::{GaussianSampler, SamplerId, ITERATION_GUARD};

/// Marsaglia's polar method. Each accepted point yields two deviates; the
/// second is cached and returned by the next call without touching the
/// source.
#[derive(Debug, Clone, Default)]
pub struct Polar {
    spare: Option<f64>,
}

impl Polar {
    pub fn new() -> Self {
        Polar { spare: None }
    }

    pub fn spare(&self) -> Option<f64> {
        self.spare
    }

    /// Drops any cached deviate.
    pub fn reset(&mut self) {
        self.spare = None;
    }
}

impl GaussianSampler for Polar {
    fn id(&self) -> SamplerId {
        SamplerId::Polar
    }

    #[inline]
    fn try_next_gaussian<S: UniformSource + ?Sized>(&mut self, src: &mut S) -> Result<f64> {
        if let Some(z) = self.spare.take() {
            return Ok(z);
        }
        for _ in 0..ITERATION_GUARD {
            let v1 = 2.0 * src.next_f64_unit() - 1.0;
            let v2 = 2.0 * src.next_f64_unit() - 1.0;
            let s = v1 * v1 + v2 * v2;
            if s > 0.0 && s < 1.0 {
                let m = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v2 * m);
                return Ok(v1 * m);
            }
        }
        Err(Error::IterationGuard {
            sampler: "polar",
            iterations: ITERATION_GUARD,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::{ScriptedSource, SplitMix64};

    fn unit_word(u: f64) -> u64 {
        ((u * (1u64 << 53) as f64) as u64) << 11
    }

    #[test]
    fn hand_evaluated_pair() {
        let mut p = Polar::new();
        let mut src = ScriptedSource::new(vec![unit_word(0.75), unit_word(0.5)]);
        let z = p.next_gaussian(&mut src);
        assert!((z - 1.665109).abs() < 1e-6);
        assert_eq!(p.spare(), Some(0.0));
        assert_eq!(p.next_gaussian(&mut src), 0.0);
        assert_eq!(src.cursor(), 2);
        assert_eq!(p.spare(), None);
    }

    #[test]
    fn origin_is_rejected() {
        let mut p = Polar::new();
        let mut src = ScriptedSource::new(vec![
            unit_word(0.5),
            unit_word(0.5),
            unit_word(0.75),
            unit_word(0.5),
        ]);
        let z = p.next_gaussian(&mut src);
        assert_eq!(src.cursor(), 4);
        assert!((z - 1.665109).abs() < 1e-6);
    }

    #[test]
    fn spare_is_used_once() {
        let mut p = Polar::new();
        let mut rng = SplitMix64::new(1);
        let mut src = ScriptedSource::new((0..1000).map(|_| rng.next_u64()).collect());
        p.next_gaussian(&mut src);
        let after_first = src.cursor();
        assert!(p.spare().is_some());
        p.next_gaussian(&mut src);
        assert_eq!(src.cursor(), after_first);
        assert!(p.spare().is_none());
        p.next_gaussian(&mut src);
        assert!(src.cursor() > after_first);
    }

    #[test]
    fn acceptance_rate_is_pi_over_four() {
        struct Counting(SplitMix64, u64);
        impl UniformSource for Counting {
            fn next_u64(&mut self) -> u64 {
                self.1 += 1;
                self.0.next_u64()
            }
        }
        let mut p = Polar::new();
        let mut src = Counting(SplitMix64::new(31), 0);
        let accepted_pairs = 1_000_000u64;
        for _ in 0..accepted_pairs {
            p.next_gaussian(&mut src);
            p.next_gaussian(&mut src);
        }
        let tried_pairs = src.1 as f64 / 2.0;
        let ratio = tried_pairs / accepted_pairs as f64;
        assert!((ratio - 4.0 / std::f64::consts::PI).abs() < 0.01, "{ratio}");
    }
}
