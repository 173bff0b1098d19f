//! Workbench for F2-linear pseudorandom generators.
//!
//! * [`generators`]: the generator roster, seeding and bit extraction.
//! * [`f2model`]: GF(2) vectors and matrices, transition-matrix extraction.
//! * [`lincomplex`]: Berlekamp-Massey, complexity profiles and the jump test.
//! * [`cipost`]: chaotic-iterations post-processing and the three-generator combiner.
//! * [`battery`]: a small statistical battery and raw stream export.
//! * [`harness`]: throughput benchmarks, jump-test calibration and figure data.

pub mod battery;
pub mod cipost;
pub mod error;
pub mod f2model;
pub mod generators;
pub mod harness;
pub mod lincomplex;
pub mod reference;

pub use battery::{run_battery, BatteryReport, Source};
pub use cipost::{make_combiner, CiCombiner, CombinationId};
pub use error::{Error, Result};
pub use f2model::{extract_transition_matrix, verify_matrix_model, F2Matrix, F2Vector};
pub use generators::{
    list_generators, seed_array_init, Bitstream, ExtractionPolicy, GeneratorDescriptor, GeneratorId,
    GeneratorState,
};
pub use lincomplex::{berlekamp_massey, complexity_profile, jump_statistics, ComplexityProfile, JumpStatistics, TestVerdict};
