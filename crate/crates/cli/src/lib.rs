//! Command dispatch for the `f2prng` binary.
//!
//! [`run`] takes the argument vector and the two output streams so the whole
//! command surface can be driven from tests. Exit codes: 0 success, 1 a
//! battery verdict failed (`test` only), 2 usage or runtime error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use f2prng::battery::{export_stream, run_battery_with, Source, BATTERY_POLICY};
use f2prng::f2model::{extract_transition_matrix_with, write_matrix_text};
use f2prng::harness::{bench, calibrate_jump, jump_curve};
use f2prng::lincomplex::{jump_verdict, saturation_point, JumpCalibration, DEFAULT_ALPHA};
use f2prng::{
    complexity_profile, jump_statistics, list_generators, CombinationId, Error, ExtractionPolicy, GeneratorId,
    GeneratorState,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_TEST_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "f2prng", version, about = "F2-linear PRNG workbench: generators, linear complexity, CI combiners")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SeedArg {
    /// Generator seed; 0 when omitted.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the generator roster with its metadata.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Write raw little-endian output words to standard output.
    Gen {
        generator: String,
        #[command(flatten)]
        seed: SeedArg,
        /// Byte count; unlimited when omitted.
        #[arg(long)]
        bytes: Option<u64>,
    },
    /// Linear-complexity profile of a bitstream.
    Profile {
        generator: String,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 4096)]
        bits: usize,
        /// lsb, msb or all.
        #[arg(long, default_value = "lsb")]
        policy: String,
        /// Write `k,L` rows to PATH (`-` for standard output).
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Jump statistics and the calibrated jump test.
    Jumps {
        generator: String,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 65536)]
        bits: usize,
        #[arg(long, default_value = "lsb")]
        policy: String,
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
        /// Write the cumulative jump curve `k,J` to PATH (`-` for standard output).
        #[arg(long, value_name = "PATH")]
        curve: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        stride: usize,
    },
    /// Run the battery; exits 1 if any verdict fails.
    Test {
        /// Generator name, combination `ijk`, or `chacha20`.
        source: String,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 65536)]
        bits: usize,
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
        #[arg(long, default_value = BATTERY_POLICY.name())]
        policy: String,
        #[arg(long)]
        json: bool,
    },
    /// Write raw combiner output (32-bit little-endian words).
    Combine {
        combination: String,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        bytes: Option<u64>,
    },
    /// Throughput of a generator or combination.
    Bench {
        source: String,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 1.0)]
        seconds: f64,
        #[arg(long)]
        json: bool,
    },
    /// Extract the transition matrix as text.
    Matrix {
        generator: String,
        /// Output path (`-` for standard output).
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Allow states above 1024 bits (MT19937 takes about 48 MiB).
        #[arg(long)]
        large: bool,
    },
    /// Fit the jump-count intercepts on the reference stream.
    CalibrateJump {
        #[arg(long, default_value_t = 1_000_000)]
        streams: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path for the JSON document; standard output when omitted.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Battery over the roster and all 20 combinations.
    Sweep {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 65536)]
        bits: usize,
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
    },
}

type CmdResult = Result<i32, Error>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn parse_policy(s: &str) -> Result<ExtractionPolicy, Error> {
    ExtractionPolicy::parse(s).ok_or_else(|| Error::Parse(format!("unknown policy {s:?} (lsb, msb, all)")))
}

fn note_seed(err: &mut dyn Write, seed: u64) {
    let _ = writeln!(err, "seed {seed}");
}

/// Runs `f` on a buffered writer for `path`, or on `out` when the path is `-`.
fn with_output(path: &Path, out: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), Error> {
    if path == Path::new("-") {
        f(out)?;
        out.flush()?;
    } else {
        let mut w = BufWriter::new(File::create(path)?);
        f(&mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn stream_out(source: &Source, bytes: Option<u64>, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    note_seed(err, source.seed());
    match export_stream(source, bytes, out) {
        Ok(_) => Ok(EXIT_OK),
        // A reader closing an unlimited stream is the normal way to stop it.
        Err(Error::Sink { written, source: e }) if bytes.is_none() && e.kind() == io::ErrorKind::BrokenPipe => {
            let _ = writeln!(err, "stopped after {written} bytes");
            Ok(EXIT_OK)
        }
        Err(e) => Err(e),
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match command {
        Command::List { json } => {
            if json {
                let doc = serde_json::to_string_pretty(list_generators()).expect("plain data serializes");
                writeln!(out, "{doc}")?;
            } else {
                writeln!(
                    out,
                    "{:<17} {:>5} {:>10} {:>10} {:>10} {:>10}",
                    "name", "width", "period", "lin-trans", "lin-out", "state"
                )?;
                for d in list_generators() {
                    writeln!(
                        out,
                        "{:<17} {:>5} {:>10} {:>10} {:>10} {:>10}",
                        d.name,
                        d.output_width,
                        format!("2^{}", d.period_exponent),
                        d.is_f2_linear_transition,
                        d.is_f2_linear_output,
                        d.state_bits
                    )?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Gen { generator, seed, bytes } => {
            let id: GeneratorId = generator.parse()?;
            stream_out(&Source::Generator { id, seed: seed.seed }, bytes, out, err)
        }
        Command::Combine {
            combination,
            seed,
            bytes,
        } => {
            let id: CombinationId = combination.parse()?;
            stream_out(&Source::Combination { id, seed: seed.seed }, bytes, out, err)
        }
        Command::Profile {
            generator,
            seed,
            bits,
            policy,
            csv,
        } => {
            let id: GeneratorId = generator.parse()?;
            let policy = parse_policy(&policy)?;
            note_seed(err, seed.seed);
            let stream = GeneratorState::create(id, seed.seed).bitstream(bits, policy);
            let profile = complexity_profile(&stream)?;
            match csv {
                Some(path) => with_output(&path, out, |w| profile.write_csv(w))?,
                None => {
                    let jumps = jump_statistics(&profile);
                    writeln!(out, "generator {id} bits {bits} lane {policy}")?;
                    writeln!(out, "final L {}", profile.final_complexity())?;
                    writeln!(out, "jumps {}", jumps.count)?;
                    match saturation_point(&profile) {
                        Some(k) => writeln!(out, "saturated from k = {k}")?,
                        None => writeln!(out, "no saturation")?,
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Jumps {
            generator,
            seed,
            bits,
            policy,
            alpha,
            curve,
            stride,
        } => {
            let id: GeneratorId = generator.parse()?;
            let policy = parse_policy(&policy)?;
            note_seed(err, seed.seed);
            let stream = GeneratorState::create(id, seed.seed).bitstream(bits, policy);
            let profile = complexity_profile(&stream)?;
            let stats = jump_statistics(&profile);
            let cal = JumpCalibration::shipped();
            writeln!(out, "generator {id} bits {bits} lane {policy}")?;
            writeln!(out, "jumps {}", stats.count)?;
            writeln!(out, "expected {:.4} variance {:.4}", cal.mean(bits), cal.variance(bits))?;
            writeln!(out, "max height {}", stats.max_height)?;
            writeln!(out, "max |L - k/2| {:.1}", stats.deviation)?;
            if bits >= f2prng::lincomplex::JUMP_TEST_MIN_BITS {
                let v = jump_verdict(&profile, alpha, cal);
                writeln!(out, "p {:.6e} {}", v.p_value, if v.pass { "pass" } else { "FAIL" })?;
            }
            if let Some(path) = curve {
                let points = jump_curve(&profile, stride);
                with_output(&path, out, |w| {
                    writeln!(w, "k,J")?;
                    points.iter().try_for_each(|(k, j)| writeln!(w, "{k},{j}"))
                })?;
            }
            Ok(EXIT_OK)
        }
        Command::Test {
            source,
            seed,
            bits,
            alpha,
            policy,
            json,
        } => {
            let src = Source::parse(&source, seed.seed)?;
            note_seed(err, seed.seed);
            let report = run_battery_with(&src, bits, alpha, parse_policy(&policy)?)?;
            if json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                write!(out, "{}", report.to_text())?;
            }
            Ok(if report.overall_pass { EXIT_OK } else { EXIT_TEST_FAILED })
        }
        Command::Bench {
            source,
            seed,
            seconds,
            json,
        } => {
            let src = Source::parse(&source, seed.seed)?;
            let r = bench(&src, seconds)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("plain data serializes"))?;
            } else {
                writeln!(
                    out,
                    "{} {:.3e} outputs/s {:.3} Gbps ({} outputs in {:.3} s, checksum {:016x})",
                    r.target, r.outputs_per_second, r.throughput_gbps, r.n_outputs, r.wall_time, r.checksum
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Matrix { generator, out: path, large } => {
            let id: GeneratorId = generator.parse()?;
            let a = extract_transition_matrix_with(id, large)?;
            with_output(&path, out, |w| write_matrix_text(&a, w))?;
            let _ = writeln!(err, "{id}: {} x {} transition matrix", a.rows(), a.cols());
            Ok(EXIT_OK)
        }
        Command::CalibrateJump { streams, seed, out: path } => {
            if streams < 2 {
                return Err(Error::Parse("calibration needs at least 2 streams".into()));
            }
            note_seed(err, seed);
            let doc = calibrate_jump(streams, seed).to_json() + "\n";
            match path {
                Some(p) => with_output(&p, out, |w| w.write_all(doc.as_bytes()))?,
                None => out.write_all(doc.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Sweep { seed, bits, alpha } => {
            note_seed(err, seed.seed);
            let sources = GeneratorId::ALL
                .into_iter()
                .map(|id| Source::Generator { id, seed: seed.seed })
                .chain(CombinationId::all().map(|id| Source::Combination { id, seed: seed.seed }));
            for src in sources {
                let r = run_battery_with(&src, bits, alpha, BATTERY_POLICY)?;
                let failed: Vec<&str> = r.verdicts.iter().filter(|v| !v.pass).map(|v| v.name.as_str()).collect();
                writeln!(
                    out,
                    "{:<17} {} {}",
                    r.source,
                    if r.overall_pass { "pass" } else { "FAIL" },
                    failed.join(",")
                )?;
            }
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy_names() {
        assert_eq!(parse_policy("lsb").unwrap(), ExtractionPolicy::LsbPerOutput);
        assert_eq!(parse_policy(BATTERY_POLICY.name()).unwrap(), BATTERY_POLICY);
        assert!(matches!(parse_policy("middle"), Err(Error::Parse(_))));
    }

    #[test]
    fn dash_writes_to_out() {
        let mut out = Vec::new();
        with_output(Path::new("-"), &mut out, |w| w.write_all(b"x")).unwrap();
        assert_eq!(out, b"x");
    }
}
