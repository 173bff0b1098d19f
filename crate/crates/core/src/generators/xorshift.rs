//! Marsaglia's xorshift generators and Vigna's scrambled variants.

use super::seeding::{knuth_array_u64, remap_component, remap_component_u32, SplitMix64};
use crate::f2model::vector::{BitReader, BitWriter, F2Vector};

/// xorshift64 with the (13, 7, 17) triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Xorshift64 {
    x: u64,
}

impl Xorshift64 {
    /// A zero seed is replaced by component 0's remap value.
    pub fn new(seed: u64) -> Self {
        Self {
            x: if seed == 0 { remap_component(0) } else { seed },
        }
    }

    pub fn state(&self) -> u64 {
        self.x
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.x;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.x = x;
        x
    }

    pub(crate) fn pack(&self, w: &mut BitWriter) {
        w.put_u64(self.x);
    }

    pub(crate) fn unpack(v: &F2Vector) -> Self {
        Self {
            x: BitReader::new(v).take_u64(),
        }
    }
}

/// Marsaglia's xor128: four 32-bit words, triple (11, 8, 19).
///
/// The roster lists it with a 64-bit output range, so each [`next_u64`](Self::next_u64)
/// concatenates two 32-bit draws, the first in the low half.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Xorshift128 {
    s: [u32; 4],
}

impl Xorshift128 {
    /// Marsaglia's published initial state.
    pub const DEFAULT_STATE: [u32; 4] = [123_456_789, 362_436_069, 521_288_629, 88_675_123];

    pub fn from_words(s: [u32; 4]) -> Self {
        if s == [0; 4] {
            Self {
                s: std::array::from_fn(remap_component_u32),
            }
        } else {
            Self { s }
        }
    }

    pub fn from_seed(seed: u64) -> Self {
        let mut sm = SplitMix64::new(seed);
        Self::from_words(std::array::from_fn(|_| sm.next_u32()))
    }

    pub fn words(&self) -> [u32; 4] {
        self.s
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        let [x, y, z, w] = self.s;
        let t = x ^ (x << 11);
        let w_new = w ^ (w >> 19) ^ (t ^ (t >> 8));
        self.s = [y, z, w, w_new];
        w_new
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let lo = self.next_u32() as u64;
        let hi = self.next_u32() as u64;
        lo | hi << 32
    }

    pub(crate) fn pack(&self, w: &mut BitWriter) {
        self.s.iter().for_each(|&c| w.put_u32(c));
    }

    pub(crate) fn unpack(v: &F2Vector) -> Self {
        let mut r = BitReader::new(v);
        Self {
            s: std::array::from_fn(|_| r.take_u32()),
        }
    }
}

/// xorshift128+ with Vigna's (23, 17, 26) triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Xorshift128Plus {
    s: [u64; 2],
}

impl Xorshift128Plus {
    pub fn from_words(s: [u64; 2]) -> Self {
        if s == [0, 0] {
            Self {
                s: [remap_component(0), remap_component(1)],
            }
        } else {
            Self { s }
        }
    }

    pub fn from_seed(seed: u64) -> Self {
        let mut sm = SplitMix64::new(seed);
        Self::from_words([sm.next_u64(), sm.next_u64()])
    }

    pub fn words(&self) -> [u64; 2] {
        self.s
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let mut s1 = self.s[0];
        let s0 = self.s[1];
        self.s[0] = s0;
        s1 ^= s1 << 23;
        self.s[1] = s1 ^ s0 ^ (s1 >> 17) ^ (s0 >> 26);
        self.s[1].wrapping_add(s0)
    }

    pub(crate) fn pack(&self, w: &mut BitWriter) {
        self.s.iter().for_each(|&c| w.put_u64(c));
    }

    pub(crate) fn unpack(v: &F2Vector) -> Self {
        let mut r = BitReader::new(v);
        Self {
            s: [r.take_u64(), r.take_u64()],
        }
    }
}

/// xorshift1024* (Vigna): sixteen 64-bit words and a rotating index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Xorshift1024Star {
    s: [u64; 16],
    p: usize,
}

impl Xorshift1024Star {
    pub const MULTIPLIER: u64 = 1_181_783_497_276_652_981;
    pub const WORDS: usize = 16;

    /// Injects a seed array; the all-zero array is replaced by remap values.
    pub fn from_array(words: [u64; 16]) -> Self {
        let s = if words.iter().all(|&w| w == 0) {
            std::array::from_fn(remap_component)
        } else {
            words
        };
        Self { s, p: 0 }
    }

    pub fn from_seed(seed: u32) -> Self {
        let arr = knuth_array_u64(seed, Self::WORDS);
        Self::from_array(arr.try_into().expect("array length"))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let s0 = self.s[self.p];
        self.p = (self.p + 1) & 15;
        let mut s1 = self.s[self.p];
        s1 ^= s1 << 31;
        self.s[self.p] = s1 ^ s0 ^ (s1 >> 11) ^ (s0 >> 30);
        self.s[self.p].wrapping_mul(Self::MULTIPLIER)
    }

    // Words are packed starting at the current index so the transition is index-free.
    pub(crate) fn pack(&self, w: &mut BitWriter) {
        for j in 0..16 {
            w.put_u64(self.s[(self.p + j) & 15]);
        }
    }

    pub(crate) fn unpack(v: &F2Vector) -> Self {
        let mut r = BitReader::new(v);
        Self {
            s: std::array::from_fn(|_| r.take_u64()),
            p: 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xorshift64_first_step_from_one() {
        // Hand evaluation of the three shifts on x = 1.
        let mut x: u64 = 1;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        assert_eq!(x, 0x4082_2041);
        let mut g = Xorshift64::new(1);
        assert_eq!(g.next_u64(), x);
    }

    #[test]
    fn marsaglia_xor64_published_sequence() {
        let mut g = Xorshift64::new(88_172_645_463_325_252);
        assert_eq!(g.next_u64(), 8_748_534_153_485_358_512);
        assert_eq!(g.next_u64(), 3_040_900_993_826_735_515);
        assert_eq!(g.next_u64(), 3_453_997_556_048_239_312);
    }

    #[test]
    fn marsaglia_xor128_published_sequence() {
        let mut g = Xorshift128::from_words(Xorshift128::DEFAULT_STATE);
        assert_eq!(g.next_u32(), 3_701_687_786);
        assert_eq!(g.next_u32(), 458_299_110);
        assert_eq!(g.next_u32(), 2_500_872_618);
        assert_eq!(g.next_u32(), 3_633_119_408);
    }

    #[test]
    fn zero_states_are_remapped() {
        assert_ne!(Xorshift64::new(0).state(), 0);
        assert_ne!(Xorshift128::from_words([0; 4]).words(), [0; 4]);
        assert_ne!(Xorshift128Plus::from_words([0; 2]).words(), [0; 2]);
        let g = Xorshift1024Star::from_array([0; 16]);
        assert!(g.s.iter().any(|&w| w != 0));
    }

    #[test]
    fn xorshift1024_low_bit_passes_through_multiplier() {
        // The multiplier is odd, so bit 0 of the output equals bit 0 of the new word.
        assert_eq!(Xorshift1024Star::MULTIPLIER & 1, 1);
        let mut g = Xorshift1024Star::from_seed(7);
        for _ in 0..100 {
            let out = g.next_u64();
            assert_eq!(out & 1, g.s[g.p] & 1);
        }
    }
}
