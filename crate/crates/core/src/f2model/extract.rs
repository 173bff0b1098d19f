//! Black-box extraction of the transition matrix `A` (and output matrix `B`)
//! from a generator's packed state map.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::matrix::F2Matrix;
use super::vector::F2Vector;
use crate::error::{Error, Result};
use crate::generators::{GeneratorId, GeneratorState};

/// Largest state extracted without the large-matrix flag.
pub const DEFAULT_MAX_STATE_BITS: usize = 1024;

/// Random pairs tried by the superposition probe before extraction.
pub const PROBE_PAIRS: usize = 64;

const PROBE_SEED: u64 = 0x00F2_11AE_A12B;

fn step(id: GeneratorId, x: &F2Vector) -> F2Vector {
    GeneratorState::step_packed(id, x).expect("dimension fixed by descriptor")
}

fn output(id: GeneratorId, x: &F2Vector) -> F2Vector {
    let mut g = GeneratorState::from_packed(id, x).expect("dimension fixed by descriptor");
    let width = id.descriptor().output_width as usize;
    let y = g.next();
    let words = if width == 64 { vec![y] } else { vec![y & 0xFFFF_FFFF] };
    F2Vector::from_words(width, words).expect("output fits its width")
}

/// Checks `f(0) = 0` and `f(a ^ b) = f(a) ^ f(b)` on `pairs` random state pairs.
fn is_linear(id: GeneratorId, pairs: usize, f: fn(GeneratorId, &F2Vector) -> F2Vector) -> bool {
    let dim = id.descriptor().state_bits;
    if !f(id, &F2Vector::zeros(dim)).is_zero() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    (0..pairs).all(|_| {
        let a = F2Vector::random(dim, &mut rng);
        let b = F2Vector::random(dim, &mut rng);
        let lhs = f(id, &a.xor(&b).expect("same dim"));
        let rhs = f(id, &a).xor(&f(id, &b)).expect("same dim");
        lhs == rhs
    })
}

/// Affine-superposition probe on the state transition.
pub fn transition_is_linear(id: GeneratorId, pairs: usize) -> bool {
    is_linear(id, pairs, step)
}

/// The same probe on the map from state to next output.
pub fn output_is_linear(id: GeneratorId, pairs: usize) -> bool {
    is_linear(id, pairs, output)
}

/// Extracts `A` for generators up to [`DEFAULT_MAX_STATE_BITS`] state bits.
pub fn extract_transition_matrix(id: GeneratorId) -> Result<F2Matrix> {
    extract_transition_matrix_with(id, false)
}

/// Extracts `A` with column `j` equal to `step(e_j)`.
///
/// `allow_large` lifts the size cap; MT19937's matrix takes about 48 MiB.
pub fn extract_transition_matrix_with(id: GeneratorId, allow_large: bool) -> Result<F2Matrix> {
    let dim = id.descriptor().state_bits;
    if !transition_is_linear(id, PROBE_PAIRS) {
        return Err(Error::NotF2Linear(id));
    }
    if dim > DEFAULT_MAX_STATE_BITS && !allow_large {
        return Err(Error::MatrixTooLarge { id, bits: dim });
    }
    Ok(columns_of(dim, dim, |j| step(id, &F2Vector::unit(dim, j))))
}

/// Extracts `B` mapping the packed state to the output of the next step.
///
/// `B` thus includes one transition: `next() = B x` where `x` is the state
/// before the call.
pub fn extract_output_matrix(id: GeneratorId) -> Result<F2Matrix> {
    let d = id.descriptor();
    if !output_is_linear(id, PROBE_PAIRS) {
        return Err(Error::NotF2Linear(id));
    }
    if d.state_bits > DEFAULT_MAX_STATE_BITS {
        return Err(Error::MatrixTooLarge { id, bits: d.state_bits });
    }
    let dim = d.state_bits;
    Ok(columns_of(d.output_width as usize, dim, |j| output(id, &F2Vector::unit(dim, j))))
}

fn columns_of(rows: usize, cols: usize, col: impl Fn(usize) -> F2Vector) -> F2Matrix {
    let mut m = F2Matrix::zeros(rows, cols);
    for j in 0..cols {
        for i in col(j).iter_ones() {
            m.set(i, j, true);
        }
    }
    m
}

/// Checks `A` against the generator on `trials` random packed states.
///
/// Each state is stepped `n_steps` times by the generator and by `mat_vec`;
/// every intermediate state must agree exactly.
pub fn verify_matrix_model(id: GeneratorId, a: &F2Matrix, n_steps: usize, trials: usize) -> Result<bool> {
    let dim = id.descriptor().state_bits;
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED ^ (trials as u64) << 32 ^ n_steps as u64);
    let states: Vec<F2Vector> = (0..trials).map(|_| F2Vector::random(dim, &mut rng)).collect();
    verify_matrix_model_from(id, a, &states, n_steps)
}

/// [`verify_matrix_model`] on caller-chosen initial states.
pub fn verify_matrix_model_from(
    id: GeneratorId,
    a: &F2Matrix,
    states: &[F2Vector],
    n_steps: usize,
) -> Result<bool> {
    let dim = id.descriptor().state_bits;
    if a.rows() != dim || a.cols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: if a.rows() != dim { a.rows() } else { a.cols() },
        });
    }
    for x0 in states {
        let mut g = GeneratorState::from_packed(id, x0)?;
        let mut x = x0.clone();
        for _ in 0..n_steps {
            g.next();
            x = a.mat_vec(&x)?;
            if g.pack_state() != x {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn shift_left(n: usize, k: usize) -> F2Matrix {
        let mut m = F2Matrix::zeros(n, n);
        for i in k..n {
            m.set(i, i - k, true);
        }
        m
    }

    fn shift_right(n: usize, k: usize) -> F2Matrix {
        let mut m = F2Matrix::zeros(n, n);
        for i in 0..n - k {
            m.set(i, i + k, true);
        }
        m
    }

    fn plus_identity(m: F2Matrix) -> F2Matrix {
        let mut m = m;
        for i in 0..m.rows() {
            m.flip(i, i);
        }
        m
    }

    #[test]
    fn xorshift64_matrix_is_the_composed_shifts() {
        let a = extract_transition_matrix(GeneratorId::Xorshift64).unwrap();
        let t13 = plus_identity(shift_left(64, 13));
        let t7 = plus_identity(shift_right(64, 7));
        let t17 = plus_identity(shift_left(64, 17));
        let composed = t17.mat_mul(&t7).unwrap().mat_mul(&t13).unwrap();
        assert_eq!(a, composed);
    }

    #[test]
    fn xorshift64_has_full_period() {
        let a = extract_transition_matrix(GeneratorId::Xorshift64).unwrap();
        let period = (BigUint::from(1u32) << 64u32) - 1u32;
        assert_eq!(a.mat_pow(&period).unwrap(), F2Matrix::identity(64));
        // Maximal order: no proper divisor 2^64-1 / p (p prime) gives the identity.
        for p in [3u64, 5, 17, 257, 641, 65537, 6_700_417] {
            let e = &period / BigUint::from(p);
            assert_ne!(a.mat_pow(&e).unwrap(), F2Matrix::identity(64), "p = {p}");
        }
    }

    #[test]
    fn lfsr113_model_and_zero_state() {
        let id = GeneratorId::Lfsr113;
        let a = extract_transition_matrix(id).unwrap();
        assert!(verify_matrix_model(id, &a, 100, 10).unwrap());
        let mut bad = a.clone();
        bad.flip(3, 70);
        assert!(!verify_matrix_model(id, &bad, 100, 10).unwrap());
    }

    #[test]
    fn taus88_fixes_zero() {
        let id = GeneratorId::Taus88;
        let a = extract_transition_matrix(id).unwrap();
        assert!(verify_matrix_model_from(id, &a, &[F2Vector::zeros(96)], 1).unwrap());
    }

    #[test]
    fn nonlinear_generators_are_rejected() {
        for id in [
            GeneratorId::Pcg32,
            GeneratorId::Mwc256,
            GeneratorId::Cmwc4096,
            GeneratorId::Mrg32k3a,
            GeneratorId::Kiss,
            GeneratorId::Ca32,
        ] {
            assert!(
                matches!(extract_transition_matrix(id), Err(Error::NotF2Linear(g)) if g == id),
                "{id}"
            );
        }
    }

    #[test]
    fn large_states_need_the_flag() {
        assert!(matches!(
            extract_transition_matrix(GeneratorId::Mt19937),
            Err(Error::MatrixTooLarge { bits: 19_968, .. })
        ));
    }

    #[test]
    fn scrambled_outputs_are_not_linear() {
        assert!(transition_is_linear(GeneratorId::Xorshift128Plus, PROBE_PAIRS));
        assert!(!output_is_linear(GeneratorId::Xorshift128Plus, PROBE_PAIRS));
        assert!(!output_is_linear(GeneratorId::Xorshift1024Star, PROBE_PAIRS));
        assert!(output_is_linear(GeneratorId::Well512, PROBE_PAIRS));
    }

    #[test]
    fn output_matrix_reproduces_outputs() {
        let id = GeneratorId::Tt800;
        let b = extract_output_matrix(id).unwrap();
        let mut g = GeneratorState::create(id, 3);
        for _ in 0..50 {
            let x = g.pack_state();
            let y = g.next();
            assert_eq!(b.mat_vec(&x).unwrap().words()[0], y);
        }
    }

    #[test]
    fn dimension_checked() {
        let a = F2Matrix::identity(10);
        assert!(matches!(
            verify_matrix_model(GeneratorId::Taus88, &a, 1, 1),
            Err(Error::DimensionMismatch { expected: 96, got: 10 })
        ));
    }
}
