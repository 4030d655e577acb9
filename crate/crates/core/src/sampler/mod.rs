//! Standard normal samplers that take their uniform source as an argument.

mod modified;
mod polar;
mod tables;
mod ziggurat;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::source::{SourceId, UniformSource};

pub use modified::ModifiedZiggurat;
pub use polar::Polar;
pub use tables::{density, tail_area, ZigguratTables, MAX_LAYERS};
pub use ziggurat::{tail_sample, Ziggurat};

/// Rejection loops give up after this many rounds.
pub const ITERATION_GUARD: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerId {
    Polar,
    Ziggurat,
    ModifiedZiggurat,
}

impl SamplerId {
    pub const ALL: [SamplerId; 3] = [
        SamplerId::Polar,
        SamplerId::Ziggurat,
        SamplerId::ModifiedZiggurat,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SamplerId::Polar => "polar",
            SamplerId::Ziggurat => "ziggurat",
            SamplerId::ModifiedZiggurat => "modified-ziggurat",
        }
    }
}

impl fmt::Display for SamplerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for SamplerId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "polar" => Ok(SamplerId::Polar),
            "ziggurat" | "original-ziggurat" => Ok(SamplerId::Ziggurat),
            "modified-ziggurat" | "modified" => Ok(SamplerId::ModifiedZiggurat),
            other => Err(invalid(format!(
                "unknown sampler `{other}` (expected polar, ziggurat or modified-ziggurat)"
            ))),
        }
    }
}

/// Whether `sampler` may be driven by `source`. The only refused pairing is
/// the modified ziggurat over the LCG, whose low-order output bits the
/// modified variant would use as its layer index.
pub fn is_sanctioned(source: SourceId, sampler: SamplerId) -> bool {
    !(source == SourceId::Lcg48 && sampler == SamplerId::ModifiedZiggurat)
}

pub fn check_pairing(source: SourceId, sampler: SamplerId) -> Result<()> {
    if is_sanctioned(source, sampler) {
        Ok(())
    } else {
        Err(Error::UnsanctionedPairing {
            source_id: source,
            sampler_id: sampler,
        })
    }
}

/// A standard normal sampler driven by a caller-supplied uniform source.
pub trait GaussianSampler {
    fn id(&self) -> SamplerId;

    /// Draws one N(0, 1) deviate, or reports a tripped iteration guard.
    fn try_next_gaussian<S: UniformSource + ?Sized>(&mut self, src: &mut S) -> Result<f64>;

    /// # Panics
    ///
    /// If a rejection loop trips [`ITERATION_GUARD`], which only happens
    /// with a broken source.
    #[inline]
    fn next_gaussian<S: UniformSource + ?Sized>(&mut self, src: &mut S) -> f64 {
        match self.try_next_gaussian(src) {
            Ok(x) => x,
            Err(e) => panic!("{e}"),
        }
    }
}

/// `mu + sigma * z` for a standard normal `z` drawn from `sampler`.
pub fn gaussian_affine<S, G>(src: &mut S, sampler: &mut G, mu: f64, sigma: f64) -> Result<f64>
where
    S: UniformSource + ?Sized,
    G: GaussianSampler + ?Sized,
{
    if !(sigma >= 0.0) {
        return Err(invalid(format!("sigma must be non-negative, got {sigma}")));
    }
    Ok(mu + sigma * sampler.try_next_gaussian(src)?)
}

/// Runtime-selected sampler.
#[derive(Debug, Clone)]
pub enum AnySampler {
    Polar(Polar),
    Ziggurat(Ziggurat),
    ModifiedZiggurat(ModifiedZiggurat),
}

impl AnySampler {
    pub fn new(id: SamplerId) -> Self {
        match id {
            SamplerId::Polar => AnySampler::Polar(Polar::new()),
            SamplerId::Ziggurat => AnySampler::Ziggurat(Ziggurat::new()),
            SamplerId::ModifiedZiggurat => AnySampler::ModifiedZiggurat(ModifiedZiggurat::new()),
        }
    }
}

impl GaussianSampler for AnySampler {
    fn id(&self) -> SamplerId {
        match self {
            AnySampler::Polar(s) => s.id(),
            AnySampler::Ziggurat(s) => s.id(),
            AnySampler::ModifiedZiggurat(s) => s.id(),
        }
    }

    #[inline]
    fn try_next_gaussian<S: UniformSource + ?Sized>(&mut self, src: &mut S) -> Result<f64> {
        match self {
            AnySampler::Polar(s) => s.try_next_gaussian(src),
            AnySampler::Ziggurat(s) => s.try_next_gaussian(src),
            AnySampler::ModifiedZiggurat(s) => s.try_next_gaussian(src),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::{Lcg48, ScriptedSource, SplitMix64};

    #[test]
    fn pairing_gate() {
        assert!(!is_sanctioned(SourceId::Lcg48, SamplerId::ModifiedZiggurat));
        assert!(is_sanctioned(SourceId::Lcg48, SamplerId::Ziggurat));
        assert!(is_sanctioned(SourceId::Lcg48, SamplerId::Polar));
        for s in SamplerId::ALL {
            assert!(is_sanctioned(SourceId::SplitMix, s));
        }
        let err = check_pairing(SourceId::Lcg48, SamplerId::ModifiedZiggurat).unwrap_err();
        assert!(err.to_string().contains("low-order bits"));
    }

    #[test]
    fn sampler_ids_parse() {
        for id in SamplerId::ALL {
            assert_eq!(id.as_str().parse::<SamplerId>().unwrap(), id);
        }
        assert_eq!(
            "original-ziggurat".parse::<SamplerId>().unwrap(),
            SamplerId::Ziggurat
        );
        assert!("box-muller".parse::<SamplerId>().is_err());
    }

    #[test]
    fn affine_identity_and_degenerate() {
        let mut a = SplitMix64::new(3);
        let mut b = SplitMix64::new(3);
        let mut za = Ziggurat::new();
        let mut zb = Ziggurat::new();
        for _ in 0..1000 {
            let raw = za.next_gaussian(&mut a);
            assert_eq!(gaussian_affine(&mut b, &mut zb, 0.0, 1.0).unwrap(), raw);
        }
        let mut lcg = Lcg48::new(1);
        let mut polar = Polar::new();
        for _ in 0..100 {
            assert_eq!(gaussian_affine(&mut lcg, &mut polar, 2.5, 0.0).unwrap(), 2.5);
        }
    }

    #[test]
    fn affine_arithmetic() {
        // A fast-path word for layer 100.
        let zig = Ziggurat::new();
        let word = zig.compose_draw(false, 100, 1 << 52);
        let mut raw_src = ScriptedSource::new(vec![word]);
        let raw = Ziggurat::new().next_gaussian(&mut raw_src);
        let mut src = ScriptedSource::new(vec![word]);
        let y = gaussian_affine(&mut src, &mut Ziggurat::new(), 5.0, 2.0).unwrap();
        assert_eq!(y, 5.0 + 2.0 * raw);

        struct One;
        impl GaussianSampler for One {
            fn id(&self) -> SamplerId {
                SamplerId::Polar
            }
            fn try_next_gaussian<S: UniformSource + ?Sized>(&mut self, _: &mut S) -> Result<f64> {
                Ok(1.0)
            }
        }
        let mut none = ScriptedSource::new(vec![]);
        assert_eq!(gaussian_affine(&mut none, &mut One, 5.0, 2.0).unwrap(), 7.0);
    }

    #[test]
    fn affine_rejects_negative_sigma() {
        let mut src = SplitMix64::new(0);
        assert!(gaussian_affine(&mut src, &mut Polar::new(), 0.0, -1.0).is_err());
        assert!(gaussian_affine(&mut src, &mut Polar::new(), 0.0, f64::NAN).is_err());
    }
}
