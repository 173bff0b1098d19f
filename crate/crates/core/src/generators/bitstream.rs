use std::fmt;

use serde::{Deserialize, Serialize};

/// Which bits of each output word go into a [`Bitstream`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExtractionPolicy {
    /// Bit 0 of every output.
    LsbPerOutput,
    /// The most significant bit of every output (bit `width - 1`).
    MsbPerOutput,
    /// Every bit of every output, least significant first.
    AllBitsLsbFirst,
}

impl ExtractionPolicy {
    pub const ALL: [ExtractionPolicy; 3] = [Self::LsbPerOutput, Self::MsbPerOutput, Self::AllBitsLsbFirst];

    pub fn name(self) -> &'static str {
        match self {
            Self::LsbPerOutput => "lsb",
            Self::MsbPerOutput => "msb",
            Self::AllBitsLsbFirst => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "lsb" | "lsb_per_output" => Some(Self::LsbPerOutput),
            "msb" | "msb_per_output" => Some(Self::MsbPerOutput),
            "all" | "all_bits" | "all_bits_lsb_first" => Some(Self::AllBitsLsbFirst),
            _ => None,
        }
    }

    /// Bits contributed per output word of the given width.
    pub fn bits_per_output(self, width: u32) -> usize {
        match self {
            Self::LsbPerOutput | Self::MsbPerOutput => 1,
            Self::AllBitsLsbFirst => width as usize,
        }
    }
}

impl fmt::Display for ExtractionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Anything that emits fixed-width output words.
pub trait WordSource {
    /// 32 or 64.
    fn output_width(&self) -> u32;
    /// Next output, zero-extended to 64 bits.
    fn next_word(&mut self) -> u64;
}

/// An ordered sequence of bits, packed 64 per word.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Bitstream {
    words: Vec<u64>,
    len: usize,
}

impl Bitstream {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut s = Self::new();
        for b in bits {
            s.push(b);
        }
        s
    }

    /// Parses `0`/`1` characters, ignoring whitespace and commas.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        let mut out = Self::new();
        for c in s.chars() {
            match c {
                '0' => out.push(false),
                '1' => out.push(true),
                c if c.is_whitespace() || c == ',' => {}
                _ => return None,
            }
        }
        Some(out)
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        let off = self.len % 64;
        if off == 0 {
            self.words.push(0);
        }
        if bit {
            *self.words.last_mut().expect("word pushed above") |= 1u64 << off;
        }
        self.len += 1;
    }

    /// Appends the low `n` bits of `word`, least significant first.
    pub fn push_word(&mut self, word: u64, n: usize) {
        debug_assert!(n <= 64);
        if n == 0 {
            return;
        }
        let word = if n == 64 { word } else { word & ((1u64 << n) - 1) };
        let off = self.len % 64;
        if off == 0 {
            self.words.push(word);
        } else {
            *self.words.last_mut().expect("partial word exists") |= word << off;
            if off + n > 64 {
                self.words.push(word >> (64 - off));
            }
        }
        self.len += n;
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Packed words; bits past `len` are zero.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn prefix(&self, n: usize) -> Bitstream {
        assert!(n <= self.len);
        let mut words = self.words[..n.div_ceil(64)].to_vec();
        if !n.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (n % 64)) - 1;
            }
        }
        Bitstream { words, len: n }
    }

    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for Bitstream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 128 {
            write!(f, "Bitstream({})", self.to_bit_string())
        } else {
            write!(f, "Bitstream(len={}, ones={})", self.len, self.count_ones())
        }
    }
}

impl FromIterator<bool> for Bitstream {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self::from_bits(iter)
    }
}

/// Draws exactly `n_bits` bits from `src` under `policy`.
///
/// With [`ExtractionPolicy::AllBitsLsbFirst`] the last word may be only partly used;
/// the source still advances by a whole output.
pub fn extract_bits<S: WordSource + ?Sized>(src: &mut S, n_bits: usize, policy: ExtractionPolicy) -> Bitstream {
    let width = src.output_width();
    let mut out = Bitstream::with_capacity(n_bits);
    match policy {
        ExtractionPolicy::LsbPerOutput => {
            for _ in 0..n_bits {
                out.push(src.next_word() & 1 == 1);
            }
        }
        ExtractionPolicy::MsbPerOutput => {
            let shift = width - 1;
            for _ in 0..n_bits {
                out.push((src.next_word() >> shift) & 1 == 1);
            }
        }
        ExtractionPolicy::AllBitsLsbFirst => {
            let width = width as usize;
            while out.len() < n_bits {
                let take = width.min(n_bits - out.len());
                out.push_word(src.next_word(), take);
            }
        }
    }
    out
}
