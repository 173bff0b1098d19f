//! Twisted GFSR family: MT19937, TT800 and WELL512a.
//!
//! All three are stepped one word at a time over a circular buffer. For MT19937
//! and TT800 this is output-for-output identical to the reference code that
//! regenerates the whole table at once, because the batch loop also reads
//! already-updated words once it wraps around.

use super::seeding::knuth_array;
use crate::f2model::vector::{BitReader, BitWriter, F2Vector};

/// Mersenne Twister MT19937 (32-bit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mt19937 {
    mt: Box<[u32]>,
    i: usize,
}

impl Mt19937 {
    pub const N: usize = 624;
    const M: usize = 397;
    const MATRIX_A: u32 = 0x9908_B0DF;
    const UPPER: u32 = 0x8000_0000;
    const LOWER: u32 = 0x7FFF_FFFF;

    /// `init_genrand(seed)`.
    pub fn new(seed: u32) -> Self {
        Self::from_array(&knuth_array(seed, Self::N))
    }

    /// Injects a 624-word table. A table whose effective 19937 bits are all
    /// zero gets its top bit set, as `init_by_array` does.
    ///
    /// # Panics
    ///
    /// Panics unless `table.len() == 624`.
    pub fn from_array(table: &[u32]) -> Self {
        assert_eq!(table.len(), Self::N, "MT19937 needs 624 words");
        let mut mt: Box<[u32]> = table.into();
        if mt[0] & Self::UPPER == 0 && mt[1..].iter().all(|&w| w == 0) {
            mt[0] = Self::UPPER;
        }
        Self { mt, i: 0 }
    }

    pub fn table(&self) -> &[u32] {
        &self.mt
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        let n = Self::N;
        let i = self.i;
        let i1 = if i + 1 == n { 0 } else { i + 1 };
        let im = if i + Self::M >= n { i + Self::M - n } else { i + Self::M };
        let y = (self.mt[i] & Self::UPPER) | (self.mt[i1] & Self::LOWER);
        let mag = if y & 1 == 1 { Self::MATRIX_A } else { 0 };
        let v = self.mt[im] ^ (y >> 1) ^ mag;
        self.mt[i] = v;
        self.i = i1;
        temper_mt(v)
    }

    pub(crate) fn pack(&self, w: &mut BitWriter) {
        for j in 0..Self::N {
            w.put_u32(self.mt[(self.i + j) % Self::N]);
        }
    }

    pub(crate) fn unpack(v: &F2Vector) -> Self {
        let mut r = BitReader::new(v);
        Self {
            mt: (0..Self::N).map(|_| r.take_u32()).collect(),
            i: 0,
        }
    }
}

#[inline]
fn temper_mt(mut y: u32) -> u32 {
    y ^= y >> 11;
    y ^= (y << 7) & 0x9D2C_5680;
    y ^= (y << 15) & 0xEFC6_0000;
    y ^ (y >> 18)
}

/// TT800, 1996 version (with the extra `y ^= y >> 16` tempering step).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tt800 {
    x: [u32; 25],
    k: usize,
}

impl Tt800 {
    pub const N: usize = 25;
    const M: usize = 7;
    const A: u32 = 0x8EBF_D028;

    pub fn from_array(x: [u32; 25]) -> Self {
        let mut x = x;
        if x.iter().all(|&w| w == 0) {
            x[0] = 1;
        }
        Self { x, k: 0 }
    }

    pub fn from_seed(seed: u32) -> Self {
        Self::from_array(knuth_array(seed, Self::N).try_into().expect("array length"))
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        let k = self.k;
        let km = (k + Self::M) % Self::N;
        let xk = self.x[k];
        let v = self.x[km] ^ (xk >> 1) ^ if xk & 1 == 1 { Self::A } else { 0 };
        self.x[k] = v;
        self.k = (k + 1) % Self::N;
        let mut y = v;
        y ^= (y << 7) & 0x2B5B_2500;
        y ^= (y << 15) & 0xDB8B_0000;
        y ^ (y >> 16)
    }

    pub(crate) fn pack(&self, w: &mut BitWriter) {
        for j in 0..Self::N {
            w.put_u32(self.x[(self.k + j) % Self::N]);
        }
    }

    pub(crate) fn unpack(v: &F2Vector) -> Self {
        let mut r = BitReader::new(v);
        Self {
            x: std::array::from_fn(|_| r.take_u32()),
            k: 0,
        }
    }
}

/// WELL512a (Panneton, L'Ecuyer, Matsumoto).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Well512 {
    s: [u32; 16],
    i: usize,
}

impl Well512 {
    pub const R: usize = 16;

    pub fn from_array(s: [u32; 16]) -> Self {
        let mut s = s;
        if s.iter().all(|&w| w == 0) {
            s[0] = 1;
        }
        Self { s, i: 0 }
    }

    pub fn from_seed(seed: u32) -> Self {
        Self::from_array(knuth_array(seed, Self::R).try_into().expect("array length"))
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        let i = self.i;
        let at = |j: usize| (i + j) & 15;
        let v0 = self.s[i];
        let vm1 = self.s[at(13)];
        let vm2 = self.s[at(9)];
        let vrm1 = self.s[at(15)];
        let z0 = vrm1;
        let z1 = (v0 ^ (v0 << 16)) ^ (vm1 ^ (vm1 << 15));
        let z2 = vm2 ^ (vm2 >> 11);
        let new_v1 = z1 ^ z2;
        self.s[i] = new_v1;
        let new_v0 = (z0 ^ (z0 << 2))
            ^ (z1 ^ (z1 << 18))
            ^ (z2 << 28)
            ^ (new_v1 ^ ((new_v1 << 5) & 0xDA44_2D24));
        self.s[at(15)] = new_v0;
        self.i = at(15);
        new_v0
    }

    pub(crate) fn pack(&self, w: &mut BitWriter) {
        for j in 0..Self::R {
            w.put_u32(self.s[(self.i + j) & 15]);
        }
    }

    pub(crate) fn unpack(v: &F2Vector) -> Self {
        let mut r = BitReader::new(v);
        Self {
            s: std::array::from_fn(|_| r.take_u32()),
            i: 0,
        }
    }
}
