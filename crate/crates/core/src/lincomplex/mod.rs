//! Linear complexity over GF(2): Berlekamp-Massey, complexity profiles, jump
//! statistics and the jump test.

mod bm;
mod calibration;

use std::io::{self, Write};

use serde::Serialize;
use statrs::function::erf::erfc;

pub use calibration::{JumpCalibration, ParityFit};

use crate::error::{Error, Result};
use crate::f2model::F2Vector;
use crate::generators::Bitstream;

/// Default two-sided significance level.
pub const DEFAULT_ALPHA: f64 = 1e-3;

/// Shortest bitstream the jump test accepts.
pub const JUMP_TEST_MIN_BITS: usize = 512;

/// Linear complexity `L` and connection polynomial `c_0 + c_1 x + ... + c_L x^L`
/// (bit `i` of the vector is `c_i`, `c_0 = 1`) of the shortest LFSR generating `bits`.
pub fn berlekamp_massey(bits: &Bitstream) -> Result<(usize, F2Vector)> {
    if bits.is_empty() {
        return Err(Error::EmptySequence);
    }
    let r = bm::run(bits, false);
    Ok((r.complexity, poly_vector(r.complexity, r.poly)))
}

/// `L(k)` for every prefix length `k = 1..=n`, in a single pass.
pub fn complexity_profile(bits: &Bitstream) -> Result<ComplexityProfile> {
    if bits.is_empty() {
        return Err(Error::EmptySequence);
    }
    let r = bm::run(bits, true);
    Ok(ComplexityProfile {
        lengths: r.lengths,
        connection_poly: poly_vector(r.complexity, r.poly),
    })
}

fn poly_vector(l: usize, words: Vec<u64>) -> F2Vector {
    F2Vector::from_words(l + 1, words).expect("BM keeps deg C <= L")
}

/// Runs the LFSR `c` from the seed bits `init` (at least `deg c` of them) out to `n` bits.
pub fn lfsr_generate(connection_poly: &F2Vector, init: &Bitstream, n: usize) -> Bitstream {
    let l = connection_poly.dim() - 1;
    assert!(init.len() >= l.min(n), "need {l} seed bits");
    let taps: Vec<usize> = connection_poly.iter_ones().filter(|&i| i > 0).collect();
    let mut out = init.prefix(l.min(n));
    for k in out.len()..n {
        let bit = taps.iter().fold(false, |acc, &i| acc ^ out.get(k - i));
        out.push(bit);
    }
    out
}

/// The complexity profile of a bit sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityProfile {
    /// `lengths[k - 1] = L(k)`.
    pub lengths: Vec<u32>,
    /// Connection polynomial of the full sequence.
    pub connection_poly: F2Vector,
}

impl ComplexityProfile {
    /// Wraps a precomputed `L(1..n)`; the polynomial is left as `1`.
    pub fn from_lengths(lengths: Vec<u32>) -> Self {
        Self {
            lengths,
            connection_poly: F2Vector::from_bits(&[true]),
        }
    }

    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    /// `L(n)`.
    pub fn final_complexity(&self) -> usize {
        self.lengths.last().map_or(0, |&l| l as usize)
    }

    /// `L(k)` for `0 <= k <= n`, with `L(0) = 0`.
    pub fn at(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.lengths[k - 1] as usize
        }
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "k,L")?;
        for (k, l) in self.lengths.iter().enumerate() {
            writeln!(w, "{},{}", k + 1, l)?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("Vec sink");
        String::from_utf8(buf).expect("ASCII")
    }
}

/// Where and by how much the profile steps up.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JumpStatistics {
    pub positions: Vec<usize>,
    pub heights: Vec<u32>,
    pub count: usize,
    pub max_height: u32,
    /// `max_k |L(k) - k/2|`.
    pub deviation: f64,
}

pub fn jump_statistics(profile: &ComplexityProfile) -> JumpStatistics {
    let mut positions = Vec::new();
    let mut heights = Vec::new();
    let mut prev = 0u32;
    let mut deviation = 0f64;
    for (i, &l) in profile.lengths.iter().enumerate() {
        let k = i + 1;
        if l > prev {
            positions.push(k);
            heights.push(l - prev);
        }
        prev = l;
        deviation = deviation.max((l as f64 - k as f64 / 2.0).abs());
    }
    JumpStatistics {
        count: positions.len(),
        max_height: heights.iter().copied().max().unwrap_or(0),
        positions,
        heights,
        deviation,
    }
}

/// Smallest `k` from which the profile is flat, if the flat tail is at least `4 L(k)` long.
pub fn saturation_point(profile: &ComplexityProfile) -> Option<usize> {
    let n = profile.n();
    if n == 0 {
        return None;
    }
    let last = profile.final_complexity() as u32;
    let k = profile
        .lengths
        .iter()
        .rposition(|&l| l != last)
        .map_or(1, |i| i + 2);
    (n - k >= 4 * last as usize).then_some(k)
}

/// Outcome of one statistical test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestVerdict {
    pub name: String,
    pub statistic: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub pass: bool,
}

impl TestVerdict {
    /// Passes iff `alpha <= p <= 1 - alpha`.
    pub fn new(name: impl Into<String>, statistic: f64, p_value: f64, alpha: f64) -> Self {
        Self {
            name: name.into(),
            statistic,
            p_value,
            alpha,
            pass: (alpha..=1.0 - alpha).contains(&p_value),
        }
    }

    /// A verdict that fails regardless of band, e.g. an unmet prerequisite.
    pub fn failed(name: impl Into<String>, statistic: f64, p_value: f64, alpha: f64) -> Self {
        Self {
            pass: false,
            ..Self::new(name, statistic, p_value, alpha)
        }
    }
}

/// Two-sided normal p-value of `z`.
pub fn two_sided_p(z: f64) -> f64 {
    erfc(z.abs() / std::f64::consts::SQRT_2).clamp(0.0, 1.0)
}

/// Jump-count test against the shipped calibration.
pub fn jump_test(bits: &Bitstream, alpha: f64) -> Result<TestVerdict> {
    jump_test_with(bits, alpha, JumpCalibration::shipped())
}

/// Jump-count test: `J` is compared with a normal law of mean `n/4 + a` and
/// variance `n/8 + b`, the intercepts taken from `cal`.
pub fn jump_test_with(bits: &Bitstream, alpha: f64, cal: &JumpCalibration) -> Result<TestVerdict> {
    let n = bits.len();
    if n < JUMP_TEST_MIN_BITS {
        return Err(Error::SequenceTooShort {
            needed: JUMP_TEST_MIN_BITS,
            got: n,
        });
    }
    let profile = complexity_profile(bits)?;
    Ok(jump_verdict(&profile, alpha, cal))
}

/// The jump test on an already computed profile.
pub fn jump_verdict(profile: &ComplexityProfile, alpha: f64, cal: &JumpCalibration) -> TestVerdict {
    let n = profile.n();
    let j = jump_statistics(profile).count as f64;
    let z = (j - cal.mean(n)) / cal.variance(n).sqrt();
    TestVerdict::new("jump", j, two_sided_p(z), alpha)
}
