//! Chaotic-iterations post-processing.
//!
//! [`general_ci_step`] is the general update: only the components in the
//! strategy subset take the value of the iteration function. With negation as
//! the iteration function this is an XOR with the subset's indicator mask
//! ([`xor_ci_step`]), and [`CiCombiner`] applies that mask form to the outputs of
//! three inner generators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2model::F2Vector;
use crate::generators::{GeneratorId, GeneratorState, WordSource};

/// Iterate `x^n` and the iteration counter `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiState {
    x: F2Vector,
    n: u64,
}

impl CiState {
    pub fn new(x: F2Vector) -> Result<Self> {
        if x.dim() < 2 {
            return Err(Error::DimensionTooSmall(x.dim()));
        }
        Ok(Self { x, n: 0 })
    }

    pub fn x(&self) -> &F2Vector {
        &self.x
    }

    pub fn iteration(&self) -> u64 {
        self.n
    }
}

/// One chaotic iteration: component `i` (1-indexed, bit `i - 1`) becomes
/// `f(x)_i` when `i` is in `subset` and keeps its value otherwise.
pub fn general_ci_step<F>(f: F, state: &CiState, subset: &[usize]) -> Result<CiState>
where
    F: Fn(&F2Vector) -> F2Vector,
{
    let dim = state.x.dim();
    if let Some(&bad) = subset.iter().find(|&&i| i == 0 || i > dim) {
        return Err(Error::IndexOutOfRange { index: bad, dim });
    }
    let fx = f(&state.x);
    if fx.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: fx.dim(),
        });
    }
    let mut x = state.x.clone();
    for &i in subset {
        x.set(i - 1, fx.get(i - 1));
    }
    Ok(CiState { x, n: state.n + 1 })
}

/// Bitwise negation, the iteration function of the XOR form.
pub fn negation(x: &F2Vector) -> F2Vector {
    let mut out = x.clone();
    for i in 0..x.dim() {
        out.flip(i);
    }
    out
}

/// The 1-indexed subset whose indicator mask is `s`.
pub fn subset_of_ones(s: &F2Vector) -> Vec<usize> {
    s.iter_ones().map(|i| i + 1).collect()
}

/// `x ^ s`: negation applied to the components marked in `s`.
pub fn xor_ci_step(x: &F2Vector, s: &F2Vector) -> Result<F2Vector> {
    x.xor(s)
}

/// Combination triplet `ijk`: generators for x, y and the subset selector z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CombinationId {
    i: u8,
    j: u8,
    k: u8,
}

impl CombinationId {
    pub fn new(i: u8, j: u8, k: u8) -> Result<Self> {
        if i > 1 || j > 1 || !(1..=5).contains(&k) {
            return Err(Error::UnknownCombination(format!("{i}{j}{k}")));
        }
        Ok(Self { i, j, k })
    }

    /// All 20 triplets in lexicographic order.
    pub fn all() -> impl Iterator<Item = CombinationId> {
        (0..2).flat_map(|i| (0..2).flat_map(move |j| (1..=5).map(move |k| CombinationId { i, j, k })))
    }

    fn xy_generator(v: u8) -> GeneratorId {
        match v {
            0 => GeneratorId::Xorshift64,
            _ => GeneratorId::Xorshift128Plus,
        }
    }

    pub fn generators(self) -> [GeneratorId; 3] {
        let z = match self.k {
            1 => GeneratorId::Lfsr113,
            2 => GeneratorId::Taus88,
            3 => GeneratorId::Tt800,
            4 => GeneratorId::Well512,
            _ => GeneratorId::Mt19937,
        };
        [Self::xy_generator(self.i), Self::xy_generator(self.j), z]
    }
}

impl fmt::Display for CombinationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.i, self.j, self.k)
    }
}

impl FromStr for CombinationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownCombination(s.to_owned());
        let d: Vec<u8> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(unknown)?;
        match d[..] {
            [i, j, k] => Self::new(i, j, k).map_err(|_| unknown()),
            _ => Err(unknown()),
        }
    }
}

/// Seed offsets for the second and third inner generator.
pub const SEED_SPLIT: [u64; 2] = [0xA5A5_A5A5_A5A5_A5A5, 0x5A5A_5A5A_5A5A_5A5A];

/// Three inner generators and the 32-bit accumulator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiCombiner {
    id: CombinationId,
    gen1: GeneratorState,
    gen2: GeneratorState,
    gen3: GeneratorState,
    s: u32,
}

/// Inner generators seeded with `seed`, `seed ^ 0xA5..` and `seed ^ 0x5A..`;
/// the accumulator starts at the low word of `seed`.
pub fn make_combiner(id: CombinationId, seed: u64) -> CiCombiner {
    let [g1, g2, g3] = id.generators();
    CiCombiner {
        id,
        gen1: GeneratorState::create(g1, seed),
        gen2: GeneratorState::create(g2, seed ^ SEED_SPLIT[0]),
        gen3: GeneratorState::create(g3, seed ^ SEED_SPLIT[1]),
        s: seed as u32,
    }
}

/// One combiner update on explicit draws; returns the new accumulator.
#[inline]
pub fn ci_mix(mut s: u32, x: u64, y: u64, z: u32) -> u32 {
    if z & 1 != 0 {
        s ^= x as u32;
    }
    if z & 2 != 0 {
        s ^= (x >> 32) as u32;
    }
    if z & 4 != 0 {
        s ^= y as u32;
    }
    s ^ (y >> 32) as u32
}

impl CiCombiner {
    pub fn id(&self) -> CombinationId {
        self.id
    }

    pub fn accumulator(&self) -> u32 {
        self.s
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        let x = self.gen1.next();
        let y = self.gen2.next();
        let z = self.gen3.next() as u32;
        self.s = ci_mix(self.s, x, y, z);
        self.s
    }

    /// Runs `n` draws and returns the xor of all outputs.
    pub fn fold_outputs(&mut self, n: u64) -> u64 {
        let mut acc = 0u32;
        for _ in 0..n {
            acc ^= self.next_u32();
        }
        acc as u64
    }
}

/// Advances the combiner once; see [`CiCombiner::next_u32`].
pub fn ci_next(c: &mut CiCombiner) -> u32 {
    c.next_u32()
}

impl WordSource for CiCombiner {
    fn output_width(&self) -> u32 {
        32
    }

    #[inline]
    fn next_word(&mut self) -> u64 {
        self.next_u32() as u64
    }
}
