use std::io;

use thiserror::Error;

use crate::generators::GeneratorId;

/// Errors produced anywhere in the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is scalar-seeded and has no seed array")]
    NotArraySeeded(GeneratorId),

    #[error("seed array for {id} must have {expected} entries, got {got}")]
    SeedArrayLength {
        id: GeneratorId,
        expected: usize,
        got: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{0} does not have an F2-linear state transition")]
    NotF2Linear(GeneratorId),

    #[error("matrix for {id} has {bits} state bits; pass the large-matrix flag to extract it")]
    MatrixTooLarge { id: GeneratorId, bits: usize },

    #[error("sequence is empty")]
    EmptySequence,

    #[error("sequence too short: need at least {needed} bits, got {got}")]
    SequenceTooShort { needed: usize, got: usize },

    #[error("prerequisite failed: {0}")]
    PrerequisiteFailed(String),

    #[error("subset index {index} outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("chaotic iterations need at least 2 components, got {0}")]
    DimensionTooSmall(usize),

    #[error("unknown combination {0:?}; expected \"ijk\" with i,j in 0..=1 and k in 1..=5")]
    UnknownCombination(String),

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),

    #[error("benchmark duration {0} s is below the 0.1 s minimum")]
    DurationTooShort(f64),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("sink failed after {written} bytes: {source}")]
    Sink {
        written: u64,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
