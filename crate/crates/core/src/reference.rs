//! ChaCha20 keystream as a stand-in for ideal random bits.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::generators::{extract_bits, Bitstream, ExtractionPolicy, WordSource};

/// 64-bit words from ChaCha20 keyed by a 64-bit seed.
#[derive(Debug, Clone)]
pub struct ReferenceStream {
    rng: ChaCha20Rng,
}

impl ReferenceStream {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream number `stream` under the key derived from `seed`.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub fn bits(&mut self, n: usize) -> Bitstream {
        extract_bits(self, n, ExtractionPolicy::AllBitsLsbFirst)
    }
}

impl WordSource for ReferenceStream {
    fn output_width(&self) -> u32 {
        64
    }

    fn next_word(&mut self) -> u64 {
        self.rng.next_u64()
    }
}
