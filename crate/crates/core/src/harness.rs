//! Throughput measurement, jump-test calibration and figure data.

use std::hint::black_box;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::battery::Source;
use crate::cipost::make_combiner;
use crate::error::{Error, Result};
use crate::generators::GeneratorState;
use crate::lincomplex::{
    complexity_profile, jump_statistics, jump_verdict, ComplexityProfile, JumpCalibration, ParityFit,
};
use crate::reference::ReferenceStream;

pub const MIN_BENCH_SECONDS: f64 = 0.1;
pub const MIN_BENCH_OUTPUTS: u64 = 10_000_000;
const BENCH_CHUNK: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchResult {
    pub target: String,
    pub output_width: u32,
    pub outputs_per_second: f64,
    /// `outputs_per_second * output_width / 1e9`.
    pub throughput_gbps: f64,
    pub wall_time: f64,
    pub n_outputs: u64,
    /// Xor of every output, returned so the loop cannot be optimized out.
    pub checksum: u64,
}

impl BenchResult {
    pub fn from_counts(target: String, output_width: u32, n_outputs: u64, wall_time: f64, checksum: u64) -> Self {
        let outputs_per_second = n_outputs as f64 / wall_time;
        Self {
            target,
            output_width,
            outputs_per_second,
            throughput_gbps: outputs_per_second * output_width as f64 / 1e9,
            wall_time,
            n_outputs,
            checksum,
        }
    }
}

/// Measures generation only: the source is seeded before the clock starts.
///
/// Runs whole chunks until both `duration` seconds and [`MIN_BENCH_OUTPUTS`]
/// outputs have elapsed. The reference stream is not a benchmark target.
pub fn bench(source: &Source, duration: f64) -> Result<BenchResult> {
    if duration.is_nan() || duration < MIN_BENCH_SECONDS {
        return Err(Error::DurationTooShort(duration));
    }
    let mut run: Box<dyn FnMut(u64) -> u64> = match *source {
        Source::Generator { id, seed } => {
            let mut g = GeneratorState::create(id, seed);
            Box::new(move |n| g.fold_outputs(n))
        }
        Source::Combination { id, seed } => {
            let mut c = make_combiner(id, seed);
            Box::new(move |n| c.fold_outputs(n))
        }
        Source::Reference { seed } => {
            let mut r = ReferenceStream::new(seed);
            Box::new(move |n| (0..n).fold(0, |acc, _| acc ^ r.next_u64()))
        }
    };
    let mut checksum = 0u64;
    let mut n_outputs = 0u64;
    let start = Instant::now();
    loop {
        checksum ^= black_box(run(BENCH_CHUNK));
        n_outputs += BENCH_CHUNK;
        let elapsed = start.elapsed().as_secs_f64();
        if elapsed >= duration && n_outputs >= MIN_BENCH_OUTPUTS {
            return Ok(BenchResult::from_counts(
                source.to_string(),
                source.output_width(),
                n_outputs,
                elapsed,
                checksum,
            ));
        }
    }
}

/// Jump counts of `streams` reference streams of `n_bits`, in stream order.
pub fn reference_jump_counts(n_bits: usize, streams: u64, seed: u64) -> Vec<u32> {
    (0..streams)
        .into_par_iter()
        .map(|i| {
            let bits = ReferenceStream::with_stream(seed, i).bits(n_bits);
            let p = complexity_profile(&bits).expect("nonempty");
            jump_statistics(&p).count as u32
        })
        .collect()
}

fn fit(n_bits: usize, counts: &[u32], streams: u64) -> ParityFit {
    let m = counts.len() as f64;
    let mean = counts.iter().map(|&j| j as f64).sum::<f64>() / m;
    let var = counts.iter().map(|&j| (j as f64 - mean).powi(2)).sum::<f64>() / (m - 1.0);
    ParityFit {
        n_bits,
        streams,
        mean_intercept: mean - n_bits as f64 / 4.0,
        variance_intercept: var - n_bits as f64 / 8.0,
    }
}

/// Fits the jump-count intercepts on `streams` ChaCha20 streams per parity.
///
/// Short streams (256 and 257 bits) suffice since the intercepts do not grow with `n`.
pub fn calibrate_jump(streams: u64, seed: u64) -> JumpCalibration {
    let even_n = 256;
    let odd_n = 257;
    let even = reference_jump_counts(even_n, streams, seed);
    // Odd-length streams use a disjoint stream range.
    let odd: Vec<u32> = (0..streams)
        .into_par_iter()
        .map(|i| {
            let bits = ReferenceStream::with_stream(seed, streams + i).bits(odd_n);
            jump_statistics(&complexity_profile(&bits).expect("nonempty")).count as u32
        })
        .collect();
    JumpCalibration {
        reference: "ChaCha20".into(),
        seed,
        even: fit(even_n, &even, streams),
        odd: fit(odd_n, &odd, streams),
    }
}

/// Summary of the jump test under the null hypothesis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullRun {
    pub n_bits: usize,
    pub streams: u64,
    pub mean_jumps: f64,
    pub false_positive_rate: f64,
}

/// Runs the jump test on `streams` reference streams and reports how often it fails.
pub fn jump_test_null_run(n_bits: usize, streams: u64, seed: u64, alpha: f64, cal: &JumpCalibration) -> NullRun {
    let results: Vec<(u32, bool)> = (0..streams)
        .into_par_iter()
        .map(|i| {
            let bits = ReferenceStream::with_stream(seed, i).bits(n_bits);
            let p = complexity_profile(&bits).expect("nonempty");
            let v = jump_verdict(&p, alpha, cal);
            (v.statistic as u32, v.pass)
        })
        .collect();
    let m = streams as f64;
    NullRun {
        n_bits,
        streams,
        mean_jumps: results.iter().map(|r| r.0 as f64).sum::<f64>() / m,
        false_positive_rate: results.iter().filter(|r| !r.1).count() as f64 / m,
    }
}

/// `(k, J(k))` every `stride` prefix lengths: the cumulative jump count curve.
pub fn jump_curve(profile: &ComplexityProfile, stride: usize) -> Vec<(usize, usize)> {
    let stride = stride.max(1);
    let mut out = Vec::new();
    let mut prev = 0u32;
    let mut jumps = 0usize;
    for (i, &l) in profile.lengths.iter().enumerate() {
        if l > prev {
            jumps += 1;
        }
        prev = l;
        let k = i + 1;
        if k % stride == 0 || k == profile.n() {
            out.push((k, jumps));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::GeneratorId;

    #[test]
    fn gbps_arithmetic() {
        let r = BenchResult::from_counts("x".into(), 64, 1_000_000_000, 1.0, 0);
        assert_eq!(r.throughput_gbps, 64.0);
        assert_eq!(r.outputs_per_second, 1e9);
    }

    #[test]
    fn short_duration_rejected() {
        let s = Source::Generator {
            id: GeneratorId::Xorshift64,
            seed: 1,
        };
        assert!(matches!(bench(&s, 0.01), Err(Error::DurationTooShort(_))));
        assert!(bench(&s, f64::NAN).is_err());
    }

    #[test]
    fn bench_meets_minimums() {
        let s = Source::Generator {
            id: GeneratorId::Xorshift64,
            seed: 1,
        };
        let r = bench(&s, 0.1).unwrap();
        assert!(r.n_outputs >= MIN_BENCH_OUTPUTS && r.wall_time >= 0.1);
        let mut g = GeneratorState::create(GeneratorId::Xorshift64, 1);
        assert_eq!(r.checksum, g.fold_outputs(r.n_outputs));
    }

    #[test]
    fn calibration_is_deterministic() {
        assert_eq!(calibrate_jump(200, 3), calibrate_jump(200, 3));
    }

    #[test]
    fn jump_curve_ends_at_count() {
        let bits = ReferenceStream::new(0).bits(1000);
        let p = complexity_profile(&bits).unwrap();
        let curve = jump_curve(&p, 100);
        assert_eq!(curve.len(), 10);
        assert_eq!(curve.last().unwrap().1, jump_statistics(&p).count);
    }
}
