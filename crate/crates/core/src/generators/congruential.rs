//! Congruential family: PCG32, the multiply-with-carry pair, MRG32k3a and KISS.
//!
//! None of these has an F2-linear transition; they exist here to contrast
//! with the shift-register generators.

use super::seeding::{knuth_array, remap_component_u32, SplitMix64};
use crate::f2model::vector::{BitReader, BitWriter, F2Vector};

/// PCG32 (XSH-RR 64/32) as in the minimal C implementation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pcg32 {
    state: u64,
    inc: u64,
}

impl Pcg32 {
    pub const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
    /// Increment of `PCG32_INITIALIZER`, the library's default stream.
    pub const DEFAULT_INCREMENT: u64 = 0xDA3E_39CB_94B9_5BDB;

    /// `pcg32_srandom_r(initstate, initseq)`.
    pub fn with_stream(init_state: u64, init_seq: u64) -> Self {
        Self::with_increment(init_state, (init_seq << 1) | 1)
    }

    fn with_increment(init_state: u64, inc: u64) -> Self {
        let mut g = Self { state: 0, inc };
        g.next_u32();
        g.state = g.state.wrapping_add(init_state);
        g.next_u32();
        g
    }

    /// Seeds the default stream.
    pub fn new(seed: u64) -> Self {
        Self::with_increment(seed, Self::DEFAULT_INCREMENT)
    }

    pub fn state(&self) -> (u64, u64) {
        (self.state, self.inc)
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        let old = self.state;
        self.state = old.wrapping_mul(Self::MULTIPLIER).wrapping_add(self.inc | 1);
        let xorshifted = (((old >> 18) ^ old) >> 27) as u32;
        let rot = (old >> 59) as u32;
        xorshifted.rotate_right(rot)
    }

    pub(crate) fn pack(&self, w: &mut BitWriter) {
        w.put_u64(self.state);
        w.put_u64(self.inc);
    }

    pub(crate) fn unpack(v: &F2Vector) -> Self {
        let mut r = BitReader::new(v);
        Self {
            state: r.take_u64(),
            inc: r.take_u64(),
        }
    }
}

/// Initial carry of Marsaglia's MWC/CMWC code, reduced below the multiplier.
const MARSAGLIA_CARRY: u32 = 362_436;

/// Marsaglia's MWC256 (lag 256, a = 809430660).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mwc256 {
    q: Box<[u32; 256]>,
    carry: u32,
    i: u8,
}

impl Mwc256 {
    pub const MULTIPLIER: u64 = 809_430_660;
    pub const LAG: usize = 256;

    pub fn from_array(q: &[u32; 256]) -> Self {
        Self::from_parts(q, MARSAGLIA_CARRY)
    }

    /// The carry is reduced modulo the multiplier to keep `carry < a`.
    pub fn from_parts(q: &[u32; 256], carry: u32) -> Self {
        let mut q = Box::new(*q);
        if q.iter().all(|&w| w == 0) {
            q[0] = remap_component_u32(0);
        }
        Self {
            q,
            carry: (carry as u64 % Self::MULTIPLIER) as u32,
            i: 255,
        }
    }

    pub fn from_seed(seed: u32) -> Self {
        let arr = knuth_array(seed, Self::LAG);
        Self::from_array(arr.as_slice().try_into().expect("array length"))
    }

    pub fn carry(&self) -> u32 {
        self.carry
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        self.i = self.i.wrapping_add(1);
        let t = Self::MULTIPLIER * self.q[self.i as usize] as u64 + self.carry as u64;
        self.carry = (t >> 32) as u32;
        self.q[self.i as usize] = t as u32;
        t as u32
    }

    pub(crate) fn pack(&self, w: &mut BitWriter) {
        let next = self.i.wrapping_add(1) as usize;
        for j in 0..Self::LAG {
            w.put_u32(self.q[(next + j) & 255]);
        }
        w.put_u32(self.carry);
    }

    pub(crate) fn unpack(v: &F2Vector) -> Self {
        let mut r = BitReader::new(v);
        let q = Box::new(std::array::from_fn(|_| r.take_u32()));
        Self {
            q,
            carry: r.take_u32(),
            i: 255,
        }
    }
}

/// Marsaglia's complementary MWC with lag 4096 and a = 18782.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cmwc4096 {
    q: Box<[u32]>,
    carry: u32,
    i: usize,
}

impl Cmwc4096 {
    pub const MULTIPLIER: u64 = 18_782;
    pub const LAG: usize = 4096;
    const R: u32 = 0xFFFF_FFFE;

    pub fn from_array(q: &[u32]) -> Self {
        Self::from_parts(q, MARSAGLIA_CARRY)
    }

    /// # Panics
    ///
    /// Panics unless `q.len() == 4096`.
    pub fn from_parts(q: &[u32], carry: u32) -> Self {
        assert_eq!(q.len(), Self::LAG, "CMWC4096 needs 4096 lag words");
        let mut q: Box<[u32]> = q.into();
        if q.iter().all(|&w| w == 0) {
            q[0] = remap_component_u32(0);
        }
        Self {
            q,
            carry: (carry as u64 % Self::MULTIPLIER) as u32,
            i: Self::LAG - 1,
        }
    }

    pub fn from_seed(seed: u32) -> Self {
        Self::from_array(&knuth_array(seed, Self::LAG))
    }

    pub fn carry(&self) -> u32 {
        self.carry
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        self.i = (self.i + 1) & (Self::LAG - 1);
        let t = Self::MULTIPLIER * self.q[self.i] as u64 + self.carry as u64;
        let mut c = (t >> 32) as u32;
        let mut x = (t as u32).wrapping_add(c);
        if x < c {
            x = x.wrapping_add(1);
            c += 1;
        }
        self.carry = c;
        let out = Self::R.wrapping_sub(x);
        self.q[self.i] = out;
        out
    }

    pub(crate) fn pack(&self, w: &mut BitWriter) {
        let next = (self.i + 1) & (Self::LAG - 1);
        for j in 0..Self::LAG {
            w.put_u32(self.q[(next + j) & (Self::LAG - 1)]);
        }
        w.put_u32(self.carry);
    }

    pub(crate) fn unpack(v: &F2Vector) -> Self {
        let mut r = BitReader::new(v);
        let q: Box<[u32]> = (0..Self::LAG).map(|_| r.take_u32()).collect();
        Self {
            q,
            carry: r.take_u32(),
            i: Self::LAG - 1,
        }
    }
}

/// L'Ecuyer's MRG32k3a, integer output `(p1 - p2) mod m1` in `[0, m1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mrg32k3a {
    s1: [i64; 3],
    s2: [i64; 3],
}

impl Mrg32k3a {
    pub const M1: i64 = 4_294_967_087;
    pub const M2: i64 = 4_294_944_443;
    const A12: i64 = 1_403_580;
    const A13N: i64 = 810_728;
    const A21: i64 = 527_612;
    const A23N: i64 = 1_370_589;

    /// Components are reduced modulo their moduli; an all-zero triple is remapped.
    pub fn from_components(s1: [u32; 3], s2: [u32; 3]) -> Self {
        let mut s1 = s1.map(|v| v as i64 % Self::M1);
        let mut s2 = s2.map(|v| v as i64 % Self::M2);
        if s1 == [0; 3] {
            s1 = std::array::from_fn(|k| remap_component_u32(k) as i64 % Self::M1);
        }
        if s2 == [0; 3] {
            s2 = std::array::from_fn(|k| remap_component_u32(k + 3) as i64 % Self::M2);
        }
        Self { s1, s2 }
    }

    pub fn from_seed(seed: u64) -> Self {
        let mut sm = SplitMix64::new(seed);
        let s1 = std::array::from_fn(|_| sm.next_u32());
        let s2 = std::array::from_fn(|_| sm.next_u32());
        Self::from_components(s1, s2)
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        let p1 = (Self::A12 * self.s1[1] - Self::A13N * self.s1[0]).rem_euclid(Self::M1);
        self.s1 = [self.s1[1], self.s1[2], p1];
        let p2 = (Self::A21 * self.s2[2] - Self::A23N * self.s2[0]).rem_euclid(Self::M2);
        self.s2 = [self.s2[1], self.s2[2], p2];
        (p1 - p2).rem_euclid(Self::M1) as u32
    }

    pub(crate) fn pack(&self, w: &mut BitWriter) {
        for &v in self.s1.iter().chain(&self.s2) {
            w.put_u32(v as u32);
        }
    }

    // Raw words are not reduced: probing may supply any bit pattern.
    pub(crate) fn unpack(v: &F2Vector) -> Self {
        let mut r = BitReader::new(v);
        let s1 = std::array::from_fn(|_| r.take_u32() as i64);
        let s2 = std::array::from_fn(|_| r.take_u32() as i64);
        Self { s1, s2 }
    }
}

/// Marsaglia's 1999 KISS: MWC pair, congruential and 3-shift register combined.
///
/// Emits two concatenated 32-bit draws per 64-bit output, the first in the low half.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kiss {
    z: u32,
    w: u32,
    jsr: u32,
    jcong: u32,
}

impl Kiss {
    pub const DEFAULT_STATE: [u32; 4] = [362_436_069, 521_288_629, 123_456_789, 380_116_160];

    /// State order is `[z, w, jsr, jcong]`. Degenerate MWC halves and a zero
    /// shift register are remapped.
    pub fn from_components(c: [u32; 4]) -> Self {
        let [mut z, mut w, mut jsr, jcong] = c;
        // 0 and the fixed points a*(2^16 - 1) + (a - 1) never leave themselves.
        if z == 0 || z == 36_969 * 0xFFFF + 36_968 {
            z = remap_component_u32(0);
        }
        if w == 0 || w == 18_000 * 0xFFFF + 17_999 {
            w = remap_component_u32(1);
        }
        if jsr == 0 {
            jsr = remap_component_u32(2);
        }
        Self { z, w, jsr, jcong }
    }

    pub fn from_seed(seed: u64) -> Self {
        let mut sm = SplitMix64::new(seed);
        Self::from_components(std::array::from_fn(|_| sm.next_u32()))
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        self.z = 36_969u32
            .wrapping_mul(self.z & 0xFFFF)
            .wrapping_add(self.z >> 16);
        self.w = 18_000u32
            .wrapping_mul(self.w & 0xFFFF)
            .wrapping_add(self.w >> 16);
        let mwc = (self.z << 16).wrapping_add(self.w);
        self.jcong = 69_069u32.wrapping_mul(self.jcong).wrapping_add(1_234_567);
        self.jsr ^= self.jsr << 17;
        self.jsr ^= self.jsr >> 13;
        self.jsr ^= self.jsr << 5;
        (mwc ^ self.jcong).wrapping_add(self.jsr)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let lo = self.next_u32() as u64;
        let hi = self.next_u32() as u64;
        lo | hi << 32
    }

    pub(crate) fn pack(&self, w: &mut BitWriter) {
        for v in [self.z, self.w, self.jsr, self.jcong] {
            w.put_u32(v);
        }
    }

    pub(crate) fn unpack(v: &F2Vector) -> Self {
        let mut r = BitReader::new(v);
        Self {
            z: r.take_u32(),
            w: r.take_u32(),
            jsr: r.take_u32(),
            jcong: r.take_u32(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pcg32_demo_stream() {
        // pcg32-demo with srandom(42, 54).
        let mut g = Pcg32::with_stream(42, 54);
        let got: Vec<u32> = (0..6).map(|_| g.next_u32()).collect();
        assert_eq!(
            got,
            [0xa15c02b7, 0x7b47f409, 0xba1d3330, 0x83d2f293, 0xbfa4784b, 0xcbed606e]
        );
    }

    #[test]
    fn pcg32_default_stream_increment() {
        let g = Pcg32::new(42);
        assert_eq!(g.state().1, Pcg32::DEFAULT_INCREMENT);
        assert_eq!(Pcg32::DEFAULT_INCREMENT, (0x6d1f1ce5ca5caded << 1) | 1);
    }

    #[test]
    fn mwc_carry_stays_below_multiplier() {
        let mut g = Mwc256::from_seed(1);
        assert!((g.carry() as u64) < Mwc256::MULTIPLIER);
        for _ in 0..100_000 {
            g.next_u32();
            assert!((g.carry() as u64) < Mwc256::MULTIPLIER);
        }
        let g = Mwc256::from_parts(&[1; 256], u32::MAX);
        assert!((g.carry() as u64) < Mwc256::MULTIPLIER);
    }

    #[test]
    fn cmwc_initial_carry_reduced() {
        let g = Cmwc4096::from_seed(1);
        assert_eq!(g.carry(), 362_436 % 18_782);
        let mut g = g;
        for _ in 0..100_000 {
            g.next_u32();
            assert!((g.carry() as u64) <= Cmwc4096::MULTIPLIER);
        }
    }

    #[test]
    fn mrg_output_below_m1() {
        let mut g = Mrg32k3a::from_seed(3);
        for _ in 0..200_000 {
            assert!((g.next_u32() as i64) < Mrg32k3a::M1);
        }
    }

    #[test]
    fn mrg_zero_triples_remapped() {
        let g = Mrg32k3a::from_components([0; 3], [0; 3]);
        assert_ne!(g.s1, [0; 3]);
        assert_ne!(g.s2, [0; 3]);
    }

    #[test]
    fn kiss_rejects_degenerate_components() {
        let g = Kiss::from_components([0, 0, 0, 0]);
        assert_ne!(g.z, 0);
        assert_ne!(g.w, 0);
        assert_ne!(g.jsr, 0);
        let g = Kiss::from_components([0x9068FFFF, 1, 1, 0]);
        assert_ne!(g.z, 0x9068FFFF);
    }
}
