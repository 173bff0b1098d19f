//! Fixtures shared by the criterion benches.

use f2prng::battery::Source;
use f2prng::reference::ReferenceStream;
use f2prng::{Bitstream, CombinationId, GeneratorId};

/// Combinations evaluated in the combiner throughput bench.
pub const TABLE_COMBINATIONS: [&str; 6] = ["011", "012", "013", "014", "015", "112"];

/// Every roster generator followed by the six table combinations.
pub fn throughput_targets(seed: u64) -> Vec<Source> {
    GeneratorId::ALL
        .into_iter()
        .map(|id| Source::Generator { id, seed })
        .chain(TABLE_COMBINATIONS.iter().map(|c| Source::Combination {
            id: c.parse::<CombinationId>().expect("valid combination"),
            seed,
        }))
        .collect()
}

/// Uniform bits from the reference stream.
pub fn random_bits(n: usize, seed: u64) -> Bitstream {
    ReferenceStream::new(seed).bits(n)
}
