use f2prng::cipost::{general_ci_step, negation, subset_of_ones, CiState, SEED_SPLIT};
use f2prng::{make_combiner, CombinationId, F2Vector, GeneratorId, GeneratorState};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn step(id: GeneratorId, x: &F2Vector) -> F2Vector {
    GeneratorState::step_packed(id, x).unwrap()
}

fn superposition_holds(id: GeneratorId, trials: usize, seed: u64) -> bool {
    let dim = id.descriptor().state_bits;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f0 = step(id, &F2Vector::zeros(dim));
    (0..trials).all(|_| {
        let a = F2Vector::random(dim, &mut rng);
        let b = F2Vector::random(dim, &mut rng);
        let lhs = step(id, &a.xor(&b).unwrap()).xor(&f0).unwrap();
        let rhs = step(id, &a).xor(&f0).unwrap().xor(&step(id, &b).xor(&f0).unwrap()).unwrap();
        lhs == rhs
    })
}

#[test]
fn linear_transitions_pass_affine_superposition() {
    for id in GeneratorId::ALL.into_iter().filter(|id| id.descriptor().is_f2_linear_transition) {
        assert!(superposition_holds(id, 1000, 7), "{id}");
    }
}

#[test]
fn nonlinear_transitions_fail_affine_superposition() {
    for id in GeneratorId::ALL.into_iter().filter(|id| !id.descriptor().is_f2_linear_transition) {
        assert!(!superposition_holds(id, 1000, 7), "{id}");
    }
}

/// The combiner replayed through the general update with negation as the
/// iteration function and the strategy subset built from the three draws.
fn general_form_outputs(id: CombinationId, seed: u64, n: usize) -> Vec<u32> {
    let [g1, g2, g3] = id.generators();
    let mut a = GeneratorState::create(g1, seed);
    let mut b = GeneratorState::create(g2, seed ^ SEED_SPLIT[0]);
    let mut c = GeneratorState::create(g3, seed ^ SEED_SPLIT[1]);
    let mut state = CiState::new(F2Vector::from_words(32, vec![seed & 0xFFFF_FFFF]).unwrap()).unwrap();
    (0..n)
        .map(|_| {
            let (x, y, z) = (a.next(), b.next(), c.next());
            let mut mask = y >> 32;
            for (bit, word) in [(1, x & 0xFFFF_FFFF), (2, x >> 32), (4, y & 0xFFFF_FFFF)] {
                if z & bit != 0 {
                    mask ^= word;
                }
            }
            let subset = subset_of_ones(&F2Vector::from_words(32, vec![mask]).unwrap());
            state = general_ci_step(negation, &state, &subset).unwrap();
            state.x().words()[0] as u32
        })
        .collect()
}

#[test]
fn combiner_matches_general_update_for_a_million_draws() {
    let id: CombinationId = "011".parse().unwrap();
    let want = general_form_outputs(id, 99, 1_000_000);
    let mut c = make_combiner(id, 99);
    assert!(want.iter().all(|&w| c.next_u32() == w));
}

#[test]
fn every_combination_matches_general_update() {
    for id in CombinationId::all() {
        let want = general_form_outputs(id, 5, 10_000);
        let mut c = make_combiner(id, 5);
        assert!(want.iter().all(|&w| c.next_u32() == w), "{id}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn create_is_deterministic(idx in 0usize..16, seed in any::<u64>()) {
        let id = GeneratorId::ALL[idx];
        let mut a = GeneratorState::create(id, seed);
        let mut b = GeneratorState::create(id, seed);
        for _ in 0..1000 {
            prop_assert_eq!(a.next(), b.next());
        }
    }

    #[test]
    fn outputs_fit_their_width(idx in 0usize..16, seed in any::<u64>()) {
        let id = GeneratorId::ALL[idx];
        let mut g = GeneratorState::create(id, seed);
        if id.descriptor().output_width == 32 {
            for _ in 0..256 {
                prop_assert!(g.next() <= u32::MAX as u64);
            }
        }
    }

    #[test]
    fn pack_round_trip_preserves_the_stream(idx in 0usize..16, seed in any::<u64>(), skip in 0usize..50) {
        let id = GeneratorId::ALL[idx];
        let mut g = GeneratorState::create(id, seed);
        for _ in 0..skip {
            g.next();
        }
        let mut h = GeneratorState::from_packed(id, &g.pack_state()).unwrap();
        for _ in 0..100 {
            prop_assert_eq!(g.next(), h.next());
        }
    }
}
