//! Seed expansion shared by the roster.
//!
//! Array-seeded generators (the twisted GFSRs, the multiply-with-carry pair and
//! xorshift1024*) are filled with Knuth's multiplicative recurrence
//! `w[i] = 1812433253 * (w[i-1] ^ (w[i-1] >> 30)) + i  (mod 2^32)`, the same
//! routine as MT19937's `init_genrand`. Multi-component scalar generators draw
//! their components from SplitMix64. Any component that violates its family
//! constraint is replaced by [`remap_component`].

/// Odd 64-bit constant used both by SplitMix64 and for replacing invalid components.
pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Multiplier of the array-initialization recurrence.
pub const KNUTH_MULTIPLIER: u32 = 1_812_433_253;

/// Vigna's SplitMix64.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn next_u32(&mut self) -> u32 {
        self.next_u64() as u32
    }
}

/// Replacement value for component `index` when the derived value is invalid.
pub fn remap_component(index: usize) -> u64 {
    GOLDEN_GAMMA.wrapping_add(index as u64)
}

/// 32-bit truncation of [`remap_component`].
pub fn remap_component_u32(index: usize) -> u32 {
    remap_component(index) as u32
}

/// Folds a 64-bit seed to the 32 bits consumed by 32-bit seeding routines.
/// Seeds below 2^32 map to themselves.
pub fn fold_seed(seed: u64) -> u32 {
    (seed ^ (seed >> 32)) as u32
}

/// Runs the Knuth recurrence for `len` entries starting from `seed`.
pub fn knuth_array(seed: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    let mut w = seed;
    for i in 0..len {
        if i > 0 {
            w = KNUTH_MULTIPLIER
                .wrapping_mul(w ^ (w >> 30))
                .wrapping_add(i as u32);
        }
        out.push(w);
    }
    out
}

/// 64-bit words for xorshift1024*: consecutive recurrence outputs paired as (low, high).
pub fn knuth_array_u64(seed: u32, len: usize) -> Vec<u64> {
    knuth_array(seed, 2 * len)
        .chunks_exact(2)
        .map(|p| p[0] as u64 | (p[1] as u64) << 32)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Hand evaluation: 1812433253 * (5489 ^ 0) + 1 mod 2^32.
    #[test]
    fn knuth_second_entry() {
        let expected = ((1_812_433_253u64 * 5489 + 1) % (1u64 << 32)) as u32;
        assert_eq!(expected, 1_301_868_182);
        let arr = knuth_array(5489, 624);
        assert_eq!(arr.len(), 624);
        assert_eq!(arr[0], 5489);
        assert_eq!(arr[1], expected);
    }

    #[test]
    fn zero_seed_still_fills_array() {
        let arr = knuth_array(0, 624);
        assert_eq!(arr[0], 0);
        assert!(arr[1..].iter().all(|&w| w != 0));
    }

    #[test]
    fn splitmix_reference_values() {
        // Published SplitMix64 outputs for seed 0 (they also open the xoshiro seed docs).
        let mut sm = SplitMix64::new(0);
        assert_eq!(sm.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(sm.next_u64(), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn fold_is_identity_below_2_32() {
        assert_eq!(fold_seed(5489), 5489);
        assert_eq!(fold_seed(0x1_0000_0001), 0);
    }
}
