//! Combined Tausworthe generators (L'Ecuyer): LFSR113, LFSR258 and Taus88.
//!
//! Each component is a Tausworthe recurrence built from a left shift, a mask
//! that drops the low bits and an xor with a right-shifted feedback term. The
//! unused low bits of every component impose the seed lower bounds.

use super::seeding::{remap_component, remap_component_u32, SplitMix64};
use crate::f2model::vector::{BitReader, BitWriter, F2Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lfsr113 {
    z: [u32; 4],
}

impl Lfsr113 {
    /// Component `k` must exceed `MIN_SEEDS[k]`.
    pub const MIN_SEEDS: [u32; 4] = [1, 7, 15, 127];

    /// Builds the generator, replacing components at or below their bound.
    pub fn from_components(z: [u32; 4]) -> Self {
        let mut z = z;
        for (k, c) in z.iter_mut().enumerate() {
            if *c <= Self::MIN_SEEDS[k] {
                *c = remap_component_u32(k);
            }
        }
        Self { z }
    }

    pub fn from_seed(seed: u64) -> Self {
        let mut sm = SplitMix64::new(seed);
        Self::from_components(std::array::from_fn(|_| sm.next_u32()))
    }

    pub fn components(&self) -> [u32; 4] {
        self.z
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        let [z1, z2, z3, z4] = &mut self.z;
        let b = ((*z1 << 6) ^ *z1) >> 13;
        *z1 = ((*z1 & 0xFFFF_FFFE) << 18) ^ b;
        let b = ((*z2 << 2) ^ *z2) >> 27;
        *z2 = ((*z2 & 0xFFFF_FFF8) << 2) ^ b;
        let b = ((*z3 << 13) ^ *z3) >> 21;
        *z3 = ((*z3 & 0xFFFF_FFF0) << 7) ^ b;
        let b = ((*z4 << 3) ^ *z4) >> 12;
        *z4 = ((*z4 & 0xFFFF_FF80) << 13) ^ b;
        *z1 ^ *z2 ^ *z3 ^ *z4
    }

    pub(crate) fn pack(&self, w: &mut BitWriter) {
        self.z.iter().for_each(|&c| w.put_u32(c));
    }

    pub(crate) fn unpack(v: &F2Vector) -> Self {
        let mut r = BitReader::new(v);
        Self {
            z: std::array::from_fn(|_| r.take_u32()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lfsr258 {
    y: [u64; 5],
}

impl Lfsr258 {
    pub const MIN_SEEDS: [u64; 5] = [1, 511, 4095, 131_071, 8_388_607];

    pub fn from_components(y: [u64; 5]) -> Self {
        let mut y = y;
        for (k, c) in y.iter_mut().enumerate() {
            if *c <= Self::MIN_SEEDS[k] {
                *c = remap_component(k);
            }
        }
        Self { y }
    }

    pub fn from_seed(seed: u64) -> Self {
        let mut sm = SplitMix64::new(seed);
        Self::from_components(std::array::from_fn(|_| sm.next_u64()))
    }

    pub fn components(&self) -> [u64; 5] {
        self.y
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let [y1, y2, y3, y4, y5] = &mut self.y;
        let b = ((*y1 << 1) ^ *y1) >> 53;
        *y1 = ((*y1 & 0xFFFF_FFFF_FFFF_FFFE) << 10) ^ b;
        let b = ((*y2 << 24) ^ *y2) >> 50;
        *y2 = ((*y2 & 0xFFFF_FFFF_FFFF_FE00) << 5) ^ b;
        let b = ((*y3 << 3) ^ *y3) >> 23;
        *y3 = ((*y3 & 0xFFFF_FFFF_FFFF_F000) << 29) ^ b;
        let b = ((*y4 << 5) ^ *y4) >> 24;
        *y4 = ((*y4 & 0xFFFF_FFFF_FFFE_0000) << 23) ^ b;
        let b = ((*y5 << 3) ^ *y5) >> 33;
        *y5 = ((*y5 & 0xFFFF_FFFF_FF80_0000) << 8) ^ b;
        *y1 ^ *y2 ^ *y3 ^ *y4 ^ *y5
    }

    pub(crate) fn pack(&self, w: &mut BitWriter) {
        self.y.iter().for_each(|&c| w.put_u64(c));
    }

    pub(crate) fn unpack(v: &F2Vector) -> Self {
        let mut r = BitReader::new(v);
        Self {
            y: std::array::from_fn(|_| r.take_u64()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Taus88 {
    s: [u32; 3],
}

impl Taus88 {
    pub const MIN_SEEDS: [u32; 3] = [1, 7, 15];

    pub fn from_components(s: [u32; 3]) -> Self {
        let mut s = s;
        for (k, c) in s.iter_mut().enumerate() {
            if *c <= Self::MIN_SEEDS[k] {
                *c = remap_component_u32(k);
            }
        }
        Self { s }
    }

    pub fn from_seed(seed: u64) -> Self {
        let mut sm = SplitMix64::new(seed);
        Self::from_components(std::array::from_fn(|_| sm.next_u32()))
    }

    pub fn components(&self) -> [u32; 3] {
        self.s
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        let [s1, s2, s3] = &mut self.s;
        let b = ((*s1 << 13) ^ *s1) >> 19;
        *s1 = ((*s1 & 0xFFFF_FFFE) << 12) ^ b;
        let b = ((*s2 << 2) ^ *s2) >> 25;
        *s2 = ((*s2 & 0xFFFF_FFF8) << 4) ^ b;
        let b = ((*s3 << 3) ^ *s3) >> 11;
        *s3 = ((*s3 & 0xFFFF_FFF0) << 17) ^ b;
        *s1 ^ *s2 ^ *s3
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_at_bound_are_remapped() {
        let g = Lfsr113::from_components([1, 7, 15, 127]);
        for (k, &c) in g.components().iter().enumerate() {
            assert!(c > Lfsr113::MIN_SEEDS[k]);
            assert_eq!(c, remap_component_u32(k));
        }
        let g = Lfsr113::from_components([0, 0, 0, 0]);
        assert!(g.components().iter().all(|&c| c != 0));
        let g = Lfsr113::from_components([2, 8, 16, 128]);
        assert_eq!(g.components(), [2, 8, 16, 128]);
    }

    #[test]
    fn lfsr258_bounds() {
        let g = Lfsr258::from_components([0; 5]);
        for (k, &c) in g.components().iter().enumerate() {
            assert!(c > Lfsr258::MIN_SEEDS[k]);
        }
    }

    #[test]
    fn taus88_bounds() {
        let g = Taus88::from_components([1, 2, 3]);
        for (k, &c) in g.components().iter().enumerate() {
            assert!(c > Taus88::MIN_SEEDS[k]);
        }
    }

    #[test]
    fn valid_seed_never_collapses_to_zero() {
        let mut g = Lfsr113::from_seed(0);
        for _ in 0..10_000 {
            g.next_u32();
            assert!(g.components().iter().all(|&c| c != 0));
        }
    }
}
