//! First 1000 outputs of every generator against the C reference in `oracle/`.

mod common;

use common::*;
use f2prng::{GeneratorId, GeneratorState};

#[test]
fn every_generator_matches_its_reference() {
    for id in GeneratorId::ALL {
        assert_eq!(first_golden_mismatch(id), None, "{id}");
    }
}

#[test]
fn mt19937_published_entries() {
    let mut next = golden_stream(GeneratorId::Mt19937);
    assert_eq!(next(), 3_499_211_612);
    for _ in 1..9999 {
        next();
    }
    assert_eq!(next(), read_golden("MT19937_10000")[0]);
    assert_eq!(read_golden("MT19937_10000")[0], 4_123_659_995);
}

#[test]
fn pcg32_demo_stream() {
    let mut next = golden_stream(GeneratorId::Pcg32);
    let head: Vec<u64> = (0..6).map(|_| next()).collect();
    assert_eq!(head, [0xa15c02b7, 0x7b47f409, 0xba1d3330, 0x83d2f293, 0xbfa4784b, 0xcbed606e]);
}

// Scalar seeding of the array-seeded generators goes through the same tables.
#[test]
fn create_matches_explicit_state() {
    for (id, seed) in [(GeneratorId::Mt19937, 5489), (GeneratorId::Well512, 1), (GeneratorId::Mwc256, 1)] {
        let want = read_golden(id.name());
        let mut g = GeneratorState::create(id, seed);
        assert!(want.iter().all(|&w| g.next() == w), "{id}");
    }
}
