use std::process::Command;

use f2prng_cli::{run, EXIT_ERROR, EXIT_OK, EXIT_TEST_FAILED};

fn call(args: &[&str]) -> (i32, Vec<u8>, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("f2prng").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, out, String::from_utf8(err).unwrap())
}

fn text(out: Vec<u8>) -> String {
    String::from_utf8(out).unwrap()
}

#[test]
fn combine_writes_eight_draws() {
    let (code, out, err) = call(&["combine", "011", "--bytes", "32"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.len(), 32);
    assert!(err.contains("seed 0"));
    let mut c = f2prng::make_combiner("011".parse().unwrap(), 0);
    let want: Vec<u8> = (0..8).flat_map(|_| c.next_u32().to_le_bytes()).collect();
    assert_eq!(out, want);
}

#[test]
fn profile_csv_saturates_at_state_size() {
    let (code, out, _) = call(&["profile", "xorshift64", "--bits", "256", "--csv", "-"]);
    assert_eq!(code, EXIT_OK);
    let csv = text(out);
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 256);
    let ls: Vec<u32> = rows.iter().map(|r| r.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!(ls.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(*ls.last().unwrap(), 64);
}

#[test]
fn battery_exit_codes() {
    let (code, out, _) = call(&["test", "LFSR113", "--bits", "65536"]);
    assert_eq!(code, EXIT_TEST_FAILED);
    assert!(text(out).contains("overall FAIL"));
    let (code, _, _) = call(&["test", "PCG32", "--bits", "65536", "--seed", "12345"]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = call(&["test", "011", "--bits", "65536", "--seed", "12345", "--json"]);
    assert_eq!(code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(doc["overall_pass"], true);
    assert_eq!(doc["n_bits"], 65536);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&[]).0, EXIT_ERROR);
    assert_eq!(call(&["frobnicate"]).0, EXIT_ERROR);
    let (code, _, err) = call(&["gen", "NoSuchGen", "--bytes", "4"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("NoSuchGen"));
    assert_eq!(call(&["test", "LFSR113", "--bits", "100"]).0, EXIT_ERROR);
    assert_eq!(call(&["bench", "xorshift64", "--seconds", "0.01"]).0, EXIT_ERROR);
    assert_eq!(call(&["matrix", "KISS", "--out", "-"]).0, EXIT_ERROR);
    assert_eq!(call(&["profile", "MT19937", "--policy", "middle"]).0, EXIT_ERROR);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn gen_is_deterministic_little_endian() {
    let (_, a, _) = call(&["gen", "MT19937", "--seed", "5489", "--bytes", "4000"]);
    let (_, b, _) = call(&["gen", "MT19937", "--seed", "5489", "--bytes", "4000"]);
    assert_eq!(a, b);
    assert_eq!(u32::from_le_bytes(a[..4].try_into().unwrap()), 3_499_211_612);
    let (_, c, _) = call(&["gen", "xorshift64", "--bytes", "13"]);
    assert_eq!(c.len(), 13);
}

#[test]
fn matrix_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("taus88.txt");
    let (code, _, err) = call(&["matrix", "Taus88", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("96 x 96"));
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed = f2prng::f2model::parse_matrix_text(&text).unwrap();
    assert_eq!(parsed, f2prng::extract_transition_matrix(f2prng::GeneratorId::Taus88).unwrap());
}

#[test]
fn list_and_jumps_report() {
    let (_, out, _) = call(&["list", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(doc.as_array().unwrap().len(), 16);
    let (code, out, _) = call(&["jumps", "LFSR113", "--bits", "4096"]);
    assert_eq!(code, EXIT_OK);
    let report = text(out);
    let jumps: usize = report
        .lines()
        .find_map(|l| l.strip_prefix("jumps "))
        .and_then(|v| v.parse().ok())
        .unwrap();
    // A 113-dimensional state allows at most 113 jumps.
    assert!(jumps <= 113 && report.contains("FAIL"), "{report}");
}

#[test]
fn calibration_document_parses() {
    let (code, out, _) = call(&["calibrate-jump", "--streams", "50", "--seed", "4"]);
    assert_eq!(code, EXIT_OK);
    let cal = f2prng::lincomplex::JumpCalibration::from_json(&text(out)).unwrap();
    assert_eq!((cal.even.streams, cal.odd.n_bits), (50, 257));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_f2prng");
    let st = Command::new(bin).args(["test", "LFSR113", "--bits", "65536"]).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_TEST_FAILED));
    let st = Command::new(bin).args(["combine", "011", "--bytes", "32"]).output().unwrap();
    assert_eq!((st.status.code(), st.stdout.len()), (Some(EXIT_OK), 32));
    let st = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_ERROR));
}
