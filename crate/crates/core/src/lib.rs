//! Gaussian random variates over pluggable 64-bit uniform generators.
//!
//! Three samplers share one calling convention: the uniform source is passed
//! in by the caller, so any generator implementing [`UniformSource`] can feed
//! any sampler.
//!
//! - [`Polar`]: the Marsaglia polar method, caching the spare deviate.
//! - [`Ziggurat`]: the original 128-layer ziggurat. Layer index and mantissa
//!   come from the high-order end of each draw, so it is safe over weak
//!   generators such as a 48-bit LCG.
//! - [`ModifiedZiggurat`]: a single-draw variant whose layer index comes from
//!   the low-order bits. Faster, but only sound over generators whose low bits
//!   are of full quality.
//!
//! Alongside the samplers live the statistical checks ([`stats`]) used to
//! certify normality and probe low-bit quality, and a small timing harness
//! ([`bench`]) reporting ns/op with Student-t confidence intervals.
//!
//! ```
//! use gausszig::{GaussianSampler, SplitMix64, Ziggurat};
//!
//! let mut rng = SplitMix64::new(42);
//! let mut zig = Ziggurat::new();
//! let x = zig.next_gaussian(&mut rng);
//! assert!(x.is_finite());
//! ```

pub mod bench;
pub mod cli;
mod error;
pub mod sampler;
pub mod source;
pub mod stats;

pub use error::{Error, Result};
pub use sampler::{
    gaussian_affine, is_sanctioned, tail_sample, AnySampler, GaussianSampler, ModifiedZiggurat, Polar,
    SamplerId, Ziggurat, ZigguratTables,
};
pub use source::{
    parse_seed, AnySource, Lcg48, ScriptedSource, SourceId, SplitMix64, UniformSource,
};
