//! Desk-scale statistical battery and raw stream export.
//!
//! The battery reads one bit per output word (the most significant by
//! default) and runs a frequency test, a runs test, the jump test and a test on
//! the final linear complexity that also flags saturated profiles.

use std::fmt::{self, Write as _};
use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::cipost::{make_combiner, CombinationId};
use crate::error::{Error, Result};
use crate::generators::{extract_bits, Bitstream, ExtractionPolicy, GeneratorId, GeneratorState, WordSource};
use crate::lincomplex::{complexity_profile, jump_verdict, saturation_point, two_sided_p, JumpCalibration, TestVerdict};
use crate::reference::ReferenceStream;

/// Smallest stream `run_battery` accepts.
pub const BATTERY_MIN_BITS: usize = 1 << 14;

/// Smallest stream for the frequency and runs tests.
pub const SANITY_MIN_BITS: usize = 100;

/// Lane the battery reads from each output.
pub const BATTERY_POLICY: ExtractionPolicy = ExtractionPolicy::MsbPerOutput;

/// Something that can be turned into a word stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Source {
    Generator { id: GeneratorId, seed: u64 },
    Combination { id: CombinationId, seed: u64 },
    /// ChaCha20 keystream.
    Reference { seed: u64 },
}

impl Source {
    /// `"ijk"` selects a combination, `reference`/`chacha20` the reference
    /// stream, anything else a roster generator.
    pub fn parse(name: &str, seed: u64) -> Result<Self> {
        if name.len() == 3 && name.bytes().all(|b| b.is_ascii_digit()) {
            return Ok(Self::Combination {
                id: name.parse()?,
                seed,
            });
        }
        if matches!(name.to_ascii_lowercase().as_str(), "reference" | "chacha20") {
            return Ok(Self::Reference { seed });
        }
        Ok(Self::Generator { id: name.parse()?, seed })
    }

    pub fn seed(&self) -> u64 {
        match *self {
            Self::Generator { seed, .. } | Self::Combination { seed, .. } | Self::Reference { seed } => seed,
        }
    }

    pub fn output_width(&self) -> u32 {
        match self {
            Self::Generator { id, .. } => id.descriptor().output_width,
            Self::Combination { .. } => 32,
            Self::Reference { .. } => 64,
        }
    }

    pub fn open(&self) -> Box<dyn WordSource + Send> {
        match *self {
            Self::Generator { id, seed } => Box::new(GeneratorState::create(id, seed)),
            Self::Combination { id, seed } => Box::new(make_combiner(id, seed)),
            Self::Reference { seed } => Box::new(ReferenceStream::new(seed)),
        }
    }

    pub fn bits(&self, n_bits: usize, policy: ExtractionPolicy) -> Bitstream {
        extract_bits(self.open().as_mut(), n_bits, policy)
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Generator { id, .. } => write!(f, "{id}"),
            Self::Combination { id, .. } => write!(f, "CI[{id}]"),
            Self::Reference { .. } => f.write_str("ChaCha20"),
        }
    }
}

/// Frequency test: `z = (2 ones - n) / sqrt(n)`.
pub fn monobit_test(bits: &Bitstream, alpha: f64) -> Result<TestVerdict> {
    let n = bits.len();
    if n < SANITY_MIN_BITS {
        return Err(Error::SequenceTooShort {
            needed: SANITY_MIN_BITS,
            got: n,
        });
    }
    let z = (2.0 * bits.count_ones() as f64 - n as f64) / (n as f64).sqrt();
    Ok(TestVerdict::new("monobit", z, two_sided_p(z), alpha))
}

/// Number of maximal blocks of equal bits.
fn count_runs(bits: &Bitstream) -> usize {
    let n = bits.len();
    let words = bits.words();
    // A run boundary sits wherever bit i differs from bit i+1.
    let mut changes = 0usize;
    for (j, &w) in words.iter().enumerate() {
        let next_low = words.get(j + 1).map_or(0, |&v| v & 1);
        let diff = w ^ ((w >> 1) | (next_low << 63));
        let valid = if (j + 1) * 64 < n {
            u64::MAX
        } else if j * 64 >= n - 1 {
            0
        } else {
            (1u64 << ((n - 1) % 64)) - 1
        };
        changes += (diff & valid).count_ones() as usize;
    }
    changes + 1
}

/// Runs test with the usual proportion prerequisite `|pi - 1/2| < 2/sqrt(n)`.
pub fn runs_test(bits: &Bitstream, alpha: f64) -> Result<TestVerdict> {
    let n = bits.len();
    if n < SANITY_MIN_BITS {
        return Err(Error::SequenceTooShort {
            needed: SANITY_MIN_BITS,
            got: n,
        });
    }
    let nf = n as f64;
    let pi = bits.count_ones() as f64 / nf;
    if (pi - 0.5).abs() >= 2.0 / nf.sqrt() {
        return Err(Error::PrerequisiteFailed(format!(
            "ones proportion {pi:.6} outside 1/2 +- {:.6}",
            2.0 / nf.sqrt()
        )));
    }
    let v = count_runs(bits) as f64;
    let expected = 2.0 * nf * pi * (1.0 - pi);
    let z = (v - expected) / (2.0 * nf.sqrt() * pi * (1.0 - pi));
    Ok(TestVerdict::new("runs", v, two_sided_p(z), alpha))
}

/// `P(L <= l)` for the linear complexity of `n` uniform random bits.
///
/// Uses the count of length-`n` sequences of complexity `L`: 1 for `L = 0`,
/// `2^(2L-1)` for `1 <= L <= n/2` and `2^(2(n-L))` above.
pub fn final_complexity_cdf(n: usize, l: usize) -> f64 {
    let (n, l) = (n as f64, l.min(n) as f64);
    let tiny = (-n).exp2();
    if 2.0 * l <= n {
        ((2.0 * l + 1.0 - n).exp2() + tiny) / 3.0
    } else {
        1.0 - ((n - 2.0 * l).exp2() - tiny) / 3.0
    }
}

/// Full record of one battery run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryReport {
    pub source: String,
    pub seed: u64,
    pub n_bits: usize,
    pub policy: ExtractionPolicy,
    pub verdicts: Vec<TestVerdict>,
    pub overall_pass: bool,
}

impl BatteryReport {
    pub fn verdict(&self, name: &str) -> Option<&TestVerdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "source {} seed {} bits {} lane {}",
            self.source, self.seed, self.n_bits, self.policy
        );
        for v in &self.verdicts {
            let _ = writeln!(
                s,
                "  {:<18} stat {:>14.4}  p {:<12.6e} {}",
                v.name,
                v.statistic,
                v.p_value,
                if v.pass { "pass" } else { "FAIL" }
            );
        }
        let _ = writeln!(s, "overall {}", if self.overall_pass { "pass" } else { "FAIL" });
        s
    }
}

/// Battery on `n_bits` from `source` through [`BATTERY_POLICY`].
pub fn run_battery(source: &Source, n_bits: usize, alpha: f64) -> Result<BatteryReport> {
    run_battery_with(source, n_bits, alpha, BATTERY_POLICY)
}

pub fn run_battery_with(
    source: &Source,
    n_bits: usize,
    alpha: f64,
    policy: ExtractionPolicy,
) -> Result<BatteryReport> {
    if n_bits < BATTERY_MIN_BITS {
        return Err(Error::SequenceTooShort {
            needed: BATTERY_MIN_BITS,
            got: n_bits,
        });
    }
    let bits = source.bits(n_bits, policy);
    let verdicts = battery_verdicts(&bits, alpha)?;
    Ok(BatteryReport {
        source: source.to_string(),
        seed: source.seed(),
        n_bits,
        policy,
        overall_pass: verdicts.iter().all(|v| v.pass),
        verdicts,
    })
}

/// The four verdicts on an explicit bitstream.
pub fn battery_verdicts(bits: &Bitstream, alpha: f64) -> Result<Vec<TestVerdict>> {
    let mut verdicts = vec![monobit_test(bits, alpha)?];
    verdicts.push(match runs_test(bits, alpha) {
        Ok(v) => v,
        Err(Error::PrerequisiteFailed(_)) => {
            TestVerdict::failed("runs", bits.count_ones() as f64 / bits.len() as f64, 0.0, alpha)
        }
        Err(e) => return Err(e),
    });
    let profile = complexity_profile(bits)?;
    verdicts.push(jump_verdict(&profile, alpha, JumpCalibration::shipped()));
    let l = profile.final_complexity();
    let p = final_complexity_cdf(profile.n(), l);
    let mut lc = TestVerdict::new("linear_complexity", l as f64, p, alpha);
    lc.pass &= saturation_point(&profile).is_none();
    verdicts.push(lc);
    Ok(verdicts)
}

/// Battery over all 20 combinations, in [`CombinationId::all`] order.
pub fn sweep(seed: u64, n_bits: usize, alpha: f64) -> Result<Vec<BatteryReport>> {
    let ids: Vec<CombinationId> = CombinationId::all().collect();
    ids.par_iter()
        .map(|&id| run_battery(&Source::Combination { id, seed }, n_bits, alpha))
        .collect()
}

/// Writes raw little-endian output words to `sink`.
///
/// With `n_bytes = Some(n)` exactly `n` bytes are written (the last word may
/// be cut). With `None` writing continues until the sink fails, which is
/// reported as [`Error::Sink`] with the byte count written so far.
pub fn export_stream<W: Write + ?Sized>(source: &Source, n_bytes: Option<u64>, sink: &mut W) -> Result<u64> {
    const CHUNK: usize = 1 << 16;
    let mut src = source.open();
    let width = (src.output_width() / 8) as usize;
    let mut buf = Vec::with_capacity(CHUNK + 8);
    let mut written = 0u64;
    loop {
        let want = match n_bytes {
            Some(n) if written >= n => break,
            Some(n) => ((n - written) as usize).min(CHUNK),
            None => CHUNK,
        };
        buf.clear();
        while buf.len() < want {
            let w = src.next_word().to_le_bytes();
            buf.extend_from_slice(&w[..width]);
        }
        buf.truncate(want);
        let mut off = 0;
        while off < buf.len() {
            match sink.write(&buf[off..]) {
                Ok(0) => {
                    let source = io::Error::new(io::ErrorKind::WriteZero, "sink accepted no bytes");
                    return Err(Error::Sink { written, source });
                }
                Ok(k) => {
                    off += k;
                    written += k as u64;
                }
                Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
                Err(source) => return Err(Error::Sink { written, source }),
            }
        }
    }
    sink.flush().map_err(|source| Error::Sink { written, source })?;
    Ok(written)
}
