//! The generator roster behind one stepping interface.
//!
//! Every generator is a plain struct with its own constructors; [`GeneratorState`]
//! wraps them for code that picks a generator at run time. Each state can be
//! packed into an [`F2Vector`] of `state_bits` bits and rebuilt from one, which
//! is what the matrix model probes.

mod automaton;
mod bitstream;
mod congruential;
mod lfsr;
pub mod seeding;
mod twisted;
mod xorshift;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use automaton::Ca32;
pub use bitstream::{extract_bits, Bitstream, ExtractionPolicy, WordSource};
pub use congruential::{Cmwc4096, Kiss, Mrg32k3a, Mwc256, Pcg32};
pub use lfsr::{Lfsr113, Lfsr258, Taus88};
pub use twisted::{Mt19937, Tt800, Well512};
pub use xorshift::{Xorshift1024Star, Xorshift128, Xorshift128Plus, Xorshift64};

use crate::error::{Error, Result};
use crate::f2model::vector::{BitWriter, F2Vector};
use seeding::{fold_seed, knuth_array, knuth_array_u64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorId {
    Lfsr113,
    Lfsr258,
    Taus88,
    Xorshift64,
    Xorshift128,
    Xorshift128Plus,
    Xorshift1024Star,
    Pcg32,
    Mwc256,
    Cmwc4096,
    Mrg32k3a,
    Mt19937,
    Tt800,
    Well512,
    Ca32,
    Kiss,
}

impl GeneratorId {
    pub const ALL: [GeneratorId; 16] = [
        Self::Lfsr113,
        Self::Lfsr258,
        Self::Taus88,
        Self::Xorshift64,
        Self::Xorshift128,
        Self::Xorshift128Plus,
        Self::Xorshift1024Star,
        Self::Pcg32,
        Self::Mwc256,
        Self::Cmwc4096,
        Self::Mrg32k3a,
        Self::Mt19937,
        Self::Tt800,
        Self::Well512,
        Self::Ca32,
        Self::Kiss,
    ];

    pub fn descriptor(self) -> &'static GeneratorDescriptor {
        &DESCRIPTORS[self as usize]
    }

    pub fn name(self) -> &'static str {
        self.descriptor().name
    }

    /// Length of the seed array for array-seeded generators.
    pub fn seed_array_len(self) -> Option<usize> {
        match self {
            Self::Mt19937 => Some(Mt19937::N),
            Self::Tt800 => Some(Tt800::N),
            Self::Well512 => Some(Well512::R),
            Self::Mwc256 => Some(Mwc256::LAG),
            Self::Cmwc4096 => Some(Cmwc4096::LAG),
            Self::Xorshift1024Star => Some(Xorshift1024Star::WORDS),
            _ => None,
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    /// Case-insensitive; `-` and `_` are ignored, and `xorshift+`/`xorshift*`
    /// spell the scrambled variants.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_'))
            .collect::<String>()
            .to_ascii_lowercase()
            .replace('+', "plus")
            .replace('*', "star");
        let key = match key.as_str() {
            "xorshiftplus" => "xorshift128plus",
            "xorshiftstar" => "xorshift1024star",
            "mt" | "mersennetwister" => "mt19937",
            "well512a" => "well512",
            other => other,
        }
        .to_owned();
        GeneratorId::ALL
            .into_iter()
            .find(|id| id.name().to_ascii_lowercase() == key)
            .ok_or_else(|| Error::UnknownGenerator(s.to_owned()))
    }
}

/// Identity and published metadata of one roster entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorDescriptor {
    pub id: GeneratorId,
    pub name: &'static str,
    /// Output range in bits (32 or 64).
    pub output_width: u32,
    /// `p` in period ~ 2^p, as tabulated for the hardware study.
    pub period_exponent: u32,
    /// The state transition is a linear map over GF(2).
    pub is_f2_linear_transition: bool,
    /// The output is a linear function of the state as well, so every output
    /// bit obeys the state's linear recurrence.
    pub is_f2_linear_output: bool,
    /// Width of the packed state (machine words, carries included).
    pub state_bits: usize,
}

const fn desc(
    id: GeneratorId,
    name: &'static str,
    output_width: u32,
    period_exponent: u32,
    linear_transition: bool,
    linear_output: bool,
    state_bits: usize,
) -> GeneratorDescriptor {
    GeneratorDescriptor {
        id,
        name,
        output_width,
        period_exponent,
        is_f2_linear_transition: linear_transition,
        is_f2_linear_output: linear_output,
        state_bits,
    }
}

use GeneratorId as G;

static DESCRIPTORS: [GeneratorDescriptor; 16] = [
    desc(G::Lfsr113, "LFSR113", 32, 113, true, true, 128),
    desc(G::Lfsr258, "LFSR258", 64, 258, true, true, 320),
    desc(G::Taus88, "Taus88", 32, 88, true, true, 96),
    desc(G::Xorshift64, "xorshift64", 64, 64, true, true, 64),
    desc(G::Xorshift128, "xorshift128", 64, 128, true, true, 128),
    desc(G::Xorshift128Plus, "xorshift128plus", 64, 128, true, false, 128),
    desc(G::Xorshift1024Star, "xorshift1024star", 64, 1024, true, false, 1024),
    desc(G::Pcg32, "PCG32", 32, 32, false, false, 128),
    desc(G::Mwc256, "MWC256", 32, 8222, false, false, 256 * 32 + 32),
    desc(G::Cmwc4096, "CMWC4096", 32, 131_086, false, false, 4096 * 32 + 32),
    desc(G::Mrg32k3a, "MRG32k3a", 32, 191, false, false, 192),
    desc(G::Mt19937, "MT19937", 32, 19_937, true, true, 624 * 32),
    desc(G::Tt800, "TT800", 32, 800, true, true, 800),
    desc(G::Well512, "WELL512", 32, 512, true, true, 512),
    desc(G::Ca32, "CA32", 32, 32, false, false, 32),
    desc(G::Kiss, "KISS", 64, 124, false, false, 128),
];

/// All descriptors in roster order.
pub fn list_generators() -> &'static [GeneratorDescriptor] {
    &DESCRIPTORS
}

/// Runs the Knuth seed-array recurrence with the length `id` requires.
///
/// Entries are 32-bit values except for xorshift1024*, whose 16 entries pair
/// consecutive recurrence outputs into 64-bit words.
pub fn seed_array_init(id: GeneratorId, seed: u32) -> Result<Vec<u64>> {
    let len = id.seed_array_len().ok_or(Error::NotArraySeeded(id))?;
    Ok(if id == GeneratorId::Xorshift1024Star {
        knuth_array_u64(seed, len)
    } else {
        knuth_array(seed, len).into_iter().map(u64::from).collect()
    })
}

/// A live generator of any roster family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorState {
    Lfsr113(Lfsr113),
    Lfsr258(Lfsr258),
    Taus88(Taus88),
    Xorshift64(Xorshift64),
    Xorshift128(Xorshift128),
    Xorshift128Plus(Xorshift128Plus),
    Xorshift1024Star(Xorshift1024Star),
    Pcg32(Pcg32),
    Mwc256(Mwc256),
    Cmwc4096(Cmwc4096),
    Mrg32k3a(Mrg32k3a),
    Mt19937(Mt19937),
    Tt800(Tt800),
    Well512(Well512),
    Ca32(Ca32),
    Kiss(Kiss),
}

/// Expands `$body` once per variant with `$g` bound to the inner generator.
macro_rules! dispatch {
    ($self:expr, $g:ident => $body:expr) => {
        match $self {
            GeneratorState::Lfsr113($g) => $body,
            GeneratorState::Lfsr258($g) => $body,
            GeneratorState::Taus88($g) => $body,
            GeneratorState::Xorshift64($g) => $body,
            GeneratorState::Xorshift128($g) => $body,
            GeneratorState::Xorshift128Plus($g) => $body,
            GeneratorState::Xorshift1024Star($g) => $body,
            GeneratorState::Pcg32($g) => $body,
            GeneratorState::Mwc256($g) => $body,
            GeneratorState::Cmwc4096($g) => $body,
            GeneratorState::Mrg32k3a($g) => $body,
            GeneratorState::Mt19937($g) => $body,
            GeneratorState::Tt800($g) => $body,
            GeneratorState::Well512($g) => $body,
            GeneratorState::Ca32($g) => $body,
            GeneratorState::Kiss($g) => $body,
        }
    };
}

/// Uniform `next` over the concrete generators, used by the dispatch macro.
pub(crate) trait Step {
    fn step(&mut self) -> u64;
}

macro_rules! step_impl {
    ($($t:ty => $m:ident),* $(,)?) => {
        $(impl Step for $t {
            #[inline]
            fn step(&mut self) -> u64 {
                self.$m() as u64
            }
        })*
    };
}

step_impl!(
    Lfsr113 => next_u32,
    Lfsr258 => next_u64,
    Taus88 => next_u32,
    Xorshift64 => next_u64,
    Xorshift128 => next_u64,
    Xorshift128Plus => next_u64,
    Xorshift1024Star => next_u64,
    Pcg32 => next_u32,
    Mwc256 => next_u32,
    Cmwc4096 => next_u32,
    Mrg32k3a => next_u32,
    Mt19937 => next_u32,
    Tt800 => next_u32,
    Well512 => next_u32,
    Ca32 => next_u32,
    Kiss => next_u64,
);

impl GeneratorState {
    /// Total constructor: invalid seeds are remapped, never rejected.
    ///
    /// Array-seeded generators run [`seed_array_init`] on the seed folded to 32 bits;
    /// xorshift64 uses the seed itself; PCG32 seeds its default stream; the other
    /// scalar generators expand the seed with SplitMix64.
    pub fn create(id: GeneratorId, seed: u64) -> Self {
        let s32 = fold_seed(seed);
        match id {
            G::Lfsr113 => Self::Lfsr113(Lfsr113::from_seed(seed)),
            G::Lfsr258 => Self::Lfsr258(Lfsr258::from_seed(seed)),
            G::Taus88 => Self::Taus88(Taus88::from_seed(seed)),
            G::Xorshift64 => Self::Xorshift64(Xorshift64::new(seed)),
            G::Xorshift128 => Self::Xorshift128(Xorshift128::from_seed(seed)),
            G::Xorshift128Plus => Self::Xorshift128Plus(Xorshift128Plus::from_seed(seed)),
            G::Xorshift1024Star => Self::Xorshift1024Star(Xorshift1024Star::from_seed(s32)),
            G::Pcg32 => Self::Pcg32(Pcg32::new(seed)),
            G::Mwc256 => Self::Mwc256(Mwc256::from_seed(s32)),
            G::Cmwc4096 => Self::Cmwc4096(Cmwc4096::from_seed(s32)),
            G::Mrg32k3a => Self::Mrg32k3a(Mrg32k3a::from_seed(seed)),
            G::Mt19937 => Self::Mt19937(Mt19937::new(s32)),
            G::Tt800 => Self::Tt800(Tt800::from_seed(s32)),
            G::Well512 => Self::Well512(Well512::from_seed(s32)),
            G::Ca32 => Self::Ca32(Ca32::from_seed(seed)),
            G::Kiss => Self::Kiss(Kiss::from_seed(seed)),
        }
    }

    /// Direct array injection for array-seeded generators.
    pub fn from_seed_array(id: GeneratorId, words: &[u64]) -> Result<Self> {
        let expected = id.seed_array_len().ok_or(Error::NotArraySeeded(id))?;
        if words.len() != expected {
            return Err(Error::SeedArrayLength {
                id,
                expected,
                got: words.len(),
            });
        }
        let w32: Vec<u32> = words.iter().map(|&w| w as u32).collect();
        Ok(match id {
            G::Mt19937 => Self::Mt19937(Mt19937::from_array(&w32)),
            G::Tt800 => Self::Tt800(Tt800::from_array(w32.try_into().expect("checked length"))),
            G::Well512 => Self::Well512(Well512::from_array(w32.try_into().expect("checked length"))),
            G::Mwc256 => Self::Mwc256(Mwc256::from_array(
                w32.as_slice().try_into().expect("checked length"),
            )),
            G::Cmwc4096 => Self::Cmwc4096(Cmwc4096::from_array(&w32)),
            G::Xorshift1024Star => Self::Xorshift1024Star(Xorshift1024Star::from_array(
                words.try_into().expect("checked length"),
            )),
            _ => unreachable!("seed_array_len covers exactly the array-seeded ids"),
        })
    }

    pub fn id(&self) -> GeneratorId {
        match self {
            Self::Lfsr113(_) => G::Lfsr113,
            Self::Lfsr258(_) => G::Lfsr258,
            Self::Taus88(_) => G::Taus88,
            Self::Xorshift64(_) => G::Xorshift64,
            Self::Xorshift128(_) => G::Xorshift128,
            Self::Xorshift128Plus(_) => G::Xorshift128Plus,
            Self::Xorshift1024Star(_) => G::Xorshift1024Star,
            Self::Pcg32(_) => G::Pcg32,
            Self::Mwc256(_) => G::Mwc256,
            Self::Cmwc4096(_) => G::Cmwc4096,
            Self::Mrg32k3a(_) => G::Mrg32k3a,
            Self::Mt19937(_) => G::Mt19937,
            Self::Tt800(_) => G::Tt800,
            Self::Well512(_) => G::Well512,
            Self::Ca32(_) => G::Ca32,
            Self::Kiss(_) => G::Kiss,
        }
    }

    pub fn descriptor(&self) -> &'static GeneratorDescriptor {
        self.id().descriptor()
    }

    /// Advances one step and returns the output, zero-extended to 64 bits.
    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> u64 {
        dispatch!(self, g => g.step())
    }

    /// Runs `n` steps and returns the xor of all outputs.
    ///
    /// The variant is matched once, outside the loop; benchmarks use this.
    pub fn fold_outputs(&mut self, n: u64) -> u64 {
        dispatch!(self, g => {
            let mut acc = 0u64;
            for _ in 0..n {
                acc ^= g.step();
            }
            acc
        })
    }

    pub fn bitstream(&mut self, n_bits: usize, policy: ExtractionPolicy) -> Bitstream {
        extract_bits(self, n_bits, policy)
    }

    /// Packed internal state, `descriptor().state_bits` wide.
    ///
    /// Circular-buffer generators are packed starting at their current index, so
    /// one step is the same map on packed states regardless of the index.
    pub fn pack_state(&self) -> F2Vector {
        let mut w = BitWriter::new(self.descriptor().state_bits);
        dispatch!(self, g => g.pack(&mut w));
        w.finish()
    }

    /// Rebuilds a state from packed bits without applying seed constraints.
    pub fn from_packed(id: GeneratorId, bits: &F2Vector) -> Result<Self> {
        let expected = id.descriptor().state_bits;
        if bits.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: bits.dim(),
            });
        }
        Ok(match id {
            G::Lfsr113 => Self::Lfsr113(Lfsr113::unpack(bits)),
            G::Lfsr258 => Self::Lfsr258(Lfsr258::unpack(bits)),
            G::Taus88 => Self::Taus88(Taus88::unpack(bits)),
            G::Xorshift64 => Self::Xorshift64(Xorshift64::unpack(bits)),
            G::Xorshift128 => Self::Xorshift128(Xorshift128::unpack(bits)),
            G::Xorshift128Plus => Self::Xorshift128Plus(Xorshift128Plus::unpack(bits)),
            G::Xorshift1024Star => Self::Xorshift1024Star(Xorshift1024Star::unpack(bits)),
            G::Pcg32 => Self::Pcg32(Pcg32::unpack(bits)),
            G::Mwc256 => Self::Mwc256(Mwc256::unpack(bits)),
            G::Cmwc4096 => Self::Cmwc4096(Cmwc4096::unpack(bits)),
            G::Mrg32k3a => Self::Mrg32k3a(Mrg32k3a::unpack(bits)),
            G::Mt19937 => Self::Mt19937(Mt19937::unpack(bits)),
            G::Tt800 => Self::Tt800(Tt800::unpack(bits)),
            G::Well512 => Self::Well512(Well512::unpack(bits)),
            G::Ca32 => Self::Ca32(Ca32::unpack(bits)),
            G::Kiss => Self::Kiss(Kiss::unpack(bits)),
        })
    }

    /// One transition on packed states.
    pub fn step_packed(id: GeneratorId, bits: &F2Vector) -> Result<F2Vector> {
        let mut g = Self::from_packed(id, bits)?;
        g.next();
        Ok(g.pack_state())
    }
}

impl WordSource for GeneratorState {
    fn output_width(&self) -> u32 {
        self.descriptor().output_width
    }

    #[inline]
    fn next_word(&mut self) -> u64 {
        self.next()
    }
}
