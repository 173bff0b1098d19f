//! Golden-vector fixtures shared by the integration targets.

#![allow(dead_code)]

use std::path::PathBuf;

use f2prng::generators::seeding::knuth_array;
use f2prng::generators::*;

pub const GOLDEN_COUNT: usize = 1000;

pub fn read_golden(name: &str) -> Vec<u64> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.txt"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    text.lines().map(|l| l.parse().expect("decimal output")).collect()
}

pub type Stream = Box<dyn FnMut() -> u64>;

const TT800_TABLE: [u32; 25] = [
    0x95f24dab, 0x0b685215, 0xe76ccae7, 0xaf3ec239, 0x715fad23, 0x24a590ad, 0x69e4b5ef, 0xbf456141, 0x96bc1b7b,
    0xa7bdf825, 0xc1de75b7, 0x8858a9c9, 0x2da87693, 0xb657f9dd, 0xffdc8a9f, 0x8121da71, 0x8b823ecb, 0x885d05f5,
    0x4e20cd47, 0x5a9ad5d9, 0x512c0c03, 0xea857ccd, 0x4cc1d30f, 0x8891a8a1, 0xa6b7aadb,
];

fn boxed<G: 'static>(mut g: G, f: fn(&mut G) -> u64) -> Stream {
    Box::new(move || f(&mut g))
}

/// The explicit initial state used by `oracle/reference.c`, per generator.
pub fn golden_stream(id: GeneratorId) -> Stream {
    use GeneratorId as G;
    match id {
        G::Lfsr113 => boxed(Lfsr113::from_components([987_654_321; 4]), |g| g.next_u32() as u64),
        G::Lfsr258 => boxed(Lfsr258::from_components([123_456_789_123_456_789; 5]), Lfsr258::next_u64),
        G::Taus88 => boxed(Taus88::from_components([12345; 3]), |g| g.next_u32() as u64),
        G::Xorshift64 => boxed(Xorshift64::new(88_172_645_463_325_252), Xorshift64::next_u64),
        G::Xorshift128 => boxed(Xorshift128::from_words(Xorshift128::DEFAULT_STATE), Xorshift128::next_u64),
        G::Xorshift128Plus => boxed(
            Xorshift128Plus::from_words([0x0123_4567_89AB_CDEF, 0xFEDC_BA98_7654_3210]),
            Xorshift128Plus::next_u64,
        ),
        G::Xorshift1024Star => boxed(Xorshift1024Star::from_seed(1), Xorshift1024Star::next_u64),
        G::Pcg32 => boxed(Pcg32::with_stream(42, 54), |g| g.next_u32() as u64),
        G::Mwc256 => boxed(Mwc256::from_seed(1), |g| g.next_u32() as u64),
        G::Cmwc4096 => boxed(Cmwc4096::from_seed(1), |g| g.next_u32() as u64),
        G::Mrg32k3a => boxed(Mrg32k3a::from_components([12345; 3], [12345; 3]), |g| g.next_u32() as u64),
        G::Mt19937 => boxed(Mt19937::new(5489), |g| g.next_u32() as u64),
        G::Tt800 => boxed(Tt800::from_array(TT800_TABLE), |g| g.next_u32() as u64),
        G::Well512 => {
            let s: [u32; 16] = knuth_array(1, 16).try_into().unwrap();
            boxed(Well512::from_array(s), |g| g.next_u32() as u64)
        }
        G::Ca32 => boxed(Ca32::from_cells(Ca32::CENTER), |g| g.next_u32() as u64),
        G::Kiss => boxed(Kiss::from_components(Kiss::DEFAULT_STATE), Kiss::next_u64),
    }
}

/// Index of the first mismatch against the golden file, if any.
pub fn first_golden_mismatch(id: GeneratorId) -> Option<usize> {
    let want = read_golden(id.name());
    assert_eq!(want.len(), GOLDEN_COUNT, "{id}");
    let mut next = golden_stream(id);
    want.iter().position(|&w| next() != w)
}
