use std::io;

use thiserror::Error;

use crate::sampler::SamplerId;
use crate::source::SourceId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller broke an operation's precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("scripted source exhausted after {consumed} words")]
    ScriptExhausted { consumed: usize },

    /// A rejection loop ran past its guard; the uniform source is broken.
    #[error("{sampler} rejection loop exceeded {iterations} iterations; the uniform source looks broken")]
    IterationGuard {
        sampler: &'static str,
        iterations: u64,
    },

    #[error("ziggurat table construction failed: {0}")]
    TableConstruction(String),

    #[error(
        "refusing to pair {sampler_id} with {source_id}: the modified ziggurat takes its layer index \
         from the low-order bits of each draw, and {source_id}'s low-order bits are not of full \
         quality (use --force to run it anyway)"
    )]
    UnsanctionedPairing {
        source_id: SourceId,
        sampler_id: SamplerId,
    },

    #[error("environment: {0}")]
    Environment(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
