//! Deterministic 64-bit uniform generators.
//!
//! Every generator implements [`UniformSource`]: one required method,
//! `next_u64`, from which the shared unit-interval convention is derived.

mod lcg;
mod scripted;
mod splitmix;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub use lcg::Lcg48;
pub use scripted::ScriptedSource;
pub use splitmix::SplitMix64;

const UNIT_SCALE: f64 = 1.0 / (1u64 << 53) as f64;

/// A seedable source of uniformly distributed 64-bit words.
pub trait UniformSource {
    fn next_u64(&mut self) -> u64;

    /// A real in `[0, 1)` built from the top 53 bits of exactly one draw.
    #[inline]
    fn next_f64_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * UNIT_SCALE
    }
}

impl<S: UniformSource + ?Sized> UniformSource for &mut S {
    #[inline]
    fn next_u64(&mut self) -> u64 {
        (**self).next_u64()
    }
}

impl<S: UniformSource + ?Sized> UniformSource for Box<S> {
    #[inline]
    fn next_u64(&mut self) -> u64 {
        (**self).next_u64()
    }
}

/// Generator identifiers as used on the command line and in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceId {
    Lcg48,
    #[serde(rename = "splitmix")]
    SplitMix,
    Scripted,
}

impl SourceId {
    pub const SEEDED: [SourceId; 2] = [SourceId::Lcg48, SourceId::SplitMix];

    pub fn as_str(self) -> &'static str {
        match self {
            SourceId::Lcg48 => "lcg48",
            SourceId::SplitMix => "splitmix",
            SourceId::Scripted => "scripted",
        }
    }
}

impl fmt::Display for SourceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for SourceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lcg48" | "lcg" => Ok(SourceId::Lcg48),
            "splitmix" | "splitmix64" => Ok(SourceId::SplitMix),
            "scripted" => Ok(SourceId::Scripted),
            other => Err(invalid(format!(
                "unknown source `{other}` (expected lcg48, splitmix or scripted)"
            ))),
        }
    }
}

/// Runtime-selected generator, for callers that pick the source from a flag.
#[derive(Debug, Clone)]
pub enum AnySource {
    Lcg48(Lcg48),
    SplitMix(SplitMix64),
    Scripted(ScriptedSource),
}

impl AnySource {
    /// Seeds one of the seedable generators. Scripted sources carry their
    /// own data and are built with [`ScriptedSource::new`] instead.
    pub fn seeded(id: SourceId, seed: u64) -> Result<Self> {
        match id {
            SourceId::Lcg48 => Ok(AnySource::Lcg48(Lcg48::new(seed))),
            SourceId::SplitMix => Ok(AnySource::SplitMix(SplitMix64::new(seed))),
            SourceId::Scripted => Err(invalid("a scripted source needs a script, not a seed")),
        }
    }

    pub fn id(&self) -> SourceId {
        match self {
            AnySource::Lcg48(_) => SourceId::Lcg48,
            AnySource::SplitMix(_) => SourceId::SplitMix,
            AnySource::Scripted(_) => SourceId::Scripted,
        }
    }
}

impl UniformSource for AnySource {
    #[inline]
    fn next_u64(&mut self) -> u64 {
        match self {
            AnySource::Lcg48(s) => s.next_u64(),
            AnySource::SplitMix(s) => s.next_u64(),
            AnySource::Scripted(s) => s.next_u64(),
        }
    }
}

/// Parses a 64-bit seed written in decimal or `0x`-prefixed hex.
pub fn parse_seed(text: &str) -> Result<u64> {
    let t = text.trim().replace('_', "");
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse::<u64>(),
    };
    parsed.map_err(|_| invalid(format!("`{text}` is not a 64-bit seed (decimal or 0x-hex)")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_interval_edge_words() {
        let mut s = ScriptedSource::new(vec![0, u64::MAX, 1 << 63]);
        assert_eq!(s.next_f64_unit(), 0.0);
        let top = s.next_f64_unit();
        assert_eq!(top, ((1u64 << 53) - 1) as f64 * UNIT_SCALE);
        assert!(top < 1.0);
        assert_eq!(s.next_f64_unit(), 0.5);
        assert_eq!(s.cursor(), 3);
    }

    #[test]
    fn unit_interval_containment() {
        let mut rng = SplitMix64::new(7);
        let mut lcg = Lcg48::new(7);
        for _ in 0..1_000_000 {
            let a = rng.next_f64_unit();
            let b = lcg.next_f64_unit();
            assert!((0.0..1.0).contains(&a));
            assert!((0.0..1.0).contains(&b));
        }
    }

    #[test]
    fn seeds_parse_decimal_and_hex() {
        assert_eq!(parse_seed("12345").unwrap(), 12345);
        assert_eq!(parse_seed("0xFF").unwrap(), 255);
        assert_eq!(parse_seed("0x5EED_0001").unwrap(), 0x5EED_0001);
        assert_eq!(parse_seed("18446744073709551615").unwrap(), u64::MAX);
        assert!(parse_seed("-1").is_err());
        assert!(parse_seed("0xZZ").is_err());
        assert!(parse_seed("18446744073709551616").is_err());
    }

    #[test]
    fn source_ids_round_trip_through_strings() {
        for id in [SourceId::Lcg48, SourceId::SplitMix, SourceId::Scripted] {
            assert_eq!(id.as_str().parse::<SourceId>().unwrap(), id);
        }
        assert!("mt19937".parse::<SourceId>().is_err());
    }

    #[test]
    fn any_source_matches_concrete() {
        let mut a = AnySource::seeded(SourceId::SplitMix, 99).unwrap();
        let mut b = SplitMix64::new(99);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        assert!(AnySource::seeded(SourceId::Scripted, 1).is_err());
    }
}
