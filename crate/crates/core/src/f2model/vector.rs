use std::fmt;

use crate::error::{Error, Result};

/// A packed vector over GF(2). Bit `i` lives in word `i / 64` at position `i % 64`.
///
/// Bits at positions `>= dim` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vector {
    words: Vec<u64>,
    dim: usize,
}

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

impl F2Vector {
    /// The zero vector of dimension `dim`.
    ///
    /// # Panics
    ///
    /// Panics if `dim == 0`.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "F2Vector dimension must be at least 1");
        Self {
            words: vec![0; words_for(dim)],
            dim,
        }
    }

    /// The `index`-th unit vector.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.set(index, true);
        v
    }

    /// Builds a vector from packed words, clearing any bits beyond `dim`.
    pub fn from_words(dim: usize, mut words: Vec<u64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        let need = words_for(dim);
        if words.len() != need {
            return Err(Error::DimensionMismatch {
                expected: need,
                got: words.len(),
            });
        }
        let mut v = Self { words: vec![], dim };
        std::mem::swap(&mut v.words, &mut words);
        v.clear_tail();
        Ok(v)
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len().max(1));
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a string of `0`/`1` characters; character `j` becomes bit `j`.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected character {other:?} in bit string"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.is_empty() {
            return Err(Error::Parse("empty bit string".into()));
        }
        Ok(Self::from_bits(&bits))
    }

    /// Fills a vector with random bits.
    pub fn random<R: rand::Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let mut v = Self::zeros(dim);
        for w in &mut v.words {
            *w = rng.random();
        }
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        let rem = self.dim % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.dim, "bit {i} out of range for dimension {}", self.dim);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.dim, "bit {i} out of range for dimension {}", self.dim);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.dim, "bit {i} out of range for dimension {}", self.dim);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the highest set bit, if any.
    pub fn highest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.dim).map(move |i| self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + tz)
                }
            })
        })
    }

    /// `self ^= other`.
    pub fn xor_assign(&mut self, other: &F2Vector) -> Result<()> {
        self.check_dim(other.dim)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    pub fn xor(&self, other: &F2Vector) -> Result<F2Vector> {
        let mut out = self.clone();
        out.xor_assign(other)?;
        Ok(out)
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &F2Vector) -> Result<bool> {
        self.check_dim(other.dim)?;
        let acc = self
            .words
            .iter()
            .zip(&other.words)
            .fold(0u64, |acc, (a, b)| acc ^ (a & b));
        Ok(acc.count_ones() & 1 == 1)
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if self.dim != got {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got,
            });
        }
        Ok(())
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// Renders bit 0 first.
    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }
}

/// Serialized as its `0`/`1` string, bit 0 first.
impl serde::Serialize for F2Vector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bit_string())
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim <= 128 {
            write!(f, "F2Vector({})", self.to_bit_string())
        } else {
            write!(f, "F2Vector(dim={}, ones={})", self.dim, self.count_ones())
        }
    }
}

/// Sequentially packs machine words into a bit vector, least significant bit first.
pub(crate) struct BitWriter {
    out: F2Vector,
    pos: usize,
}

impl BitWriter {
    pub(crate) fn new(dim: usize) -> Self {
        Self {
            out: F2Vector::zeros(dim),
            pos: 0,
        }
    }

    pub(crate) fn put(&mut self, value: u64, width: usize) {
        debug_assert!(width <= 64);
        let value = if width == 64 {
            value
        } else {
            value & ((1u64 << width) - 1)
        };
        let (wi, off) = (self.pos / 64, self.pos % 64);
        let words = self.out.words_mut();
        words[wi] |= value << off;
        if off != 0 && off + width > 64 {
            words[wi + 1] |= value >> (64 - off);
        }
        self.pos += width;
    }

    pub(crate) fn put_u32(&mut self, value: u32) {
        self.put(value as u64, 32);
    }

    pub(crate) fn put_u64(&mut self, value: u64) {
        self.put(value, 64);
    }

    pub(crate) fn finish(self) -> F2Vector {
        debug_assert_eq!(self.pos, self.out.dim(), "packed state width mismatch");
        self.out
    }
}

/// Reads words back out of a vector produced by [`BitWriter`].
pub(crate) struct BitReader<'a> {
    src: &'a F2Vector,
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub(crate) fn new(src: &'a F2Vector) -> Self {
        Self { src, pos: 0 }
    }

    pub(crate) fn take(&mut self, width: usize) -> u64 {
        debug_assert!(width <= 64);
        let (wi, off) = (self.pos / 64, self.pos % 64);
        let words = self.src.words();
        let mut v = words[wi] >> off;
        if off != 0 && off + width > 64 {
            v |= words[wi + 1] << (64 - off);
        }
        self.pos += width;
        if width == 64 {
            v
        } else {
            v & ((1u64 << width) - 1)
        }
    }

    pub(crate) fn take_u32(&mut self) -> u32 {
        self.take(32) as u32
    }

    pub(crate) fn take_u64(&mut self) -> u64 {
        self.take(64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_bits_stay_clear() {
        let v = F2Vector::from_words(3, vec![u64::MAX]).unwrap();
        assert_eq!(v.words(), &[0b111]);
        assert_eq!(v.count_ones(), 3);
    }

    #[test]
    fn bit_string_is_lsb_first() {
        let v = F2Vector::from_bit_str("1010").unwrap();
        assert!(v.get(0) && !v.get(1) && v.get(2) && !v.get(3));
        assert_eq!(v.to_bit_string(), "1010");
        assert!(F2Vector::from_bit_str("10x").is_err());
    }

    #[test]
    fn writer_reader_roundtrip_across_word_boundaries() {
        let mut w = BitWriter::new(32 + 64 + 32 + 7);
        w.put_u32(0xDEAD_BEEF);
        w.put_u64(0x0123_4567_89AB_CDEF);
        w.put_u32(0xCAFE_F00D);
        w.put(0x55, 7);
        let v = w.finish();
        let mut r = BitReader::new(&v);
        assert_eq!(r.take_u32(), 0xDEAD_BEEF);
        assert_eq!(r.take_u64(), 0x0123_4567_89AB_CDEF);
        assert_eq!(r.take_u32(), 0xCAFE_F00D);
        assert_eq!(r.take(7), 0x55);
    }

    #[test]
    fn dot_and_xor_check_dimensions() {
        let a = F2Vector::from_bit_str("110").unwrap();
        let b = F2Vector::from_bit_str("011").unwrap();
        assert!(a.dot(&b).unwrap());
        assert_eq!(a.xor(&b).unwrap().to_bit_string(), "101");
        let c = F2Vector::zeros(4);
        assert!(matches!(a.dot(&c), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn iter_ones_and_highest() {
        let mut v = F2Vector::zeros(200);
        for i in [0, 63, 64, 199] {
            v.set(i, true);
        }
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 199]);
        assert_eq!(v.highest_one(), Some(199));
        assert_eq!(F2Vector::zeros(5).highest_one(), None);
    }
}
