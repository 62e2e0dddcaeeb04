//! Black-box tests of the `deltalp` binary: exit-code contract, output
//! formats, seeded determinism, file output, and the documented examples.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_deltalp"));
    // Keep results independent of the caller's environment.
    c.env_remove("DELTALP_BITS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no exit code (killed by signal?)")
}

/// Pull the decimal value out of a `name = value +/- radius` line.
fn value_of(line: &str) -> f64 {
    let rhs = line.split(" = ").nth(1).unwrap_or_else(|| panic!("no value in {line:?}"));
    let v = rhs.split(" +/- ").next().unwrap();
    v.trim().parse().unwrap_or_else(|_| panic!("unparseable value in {line:?}"))
}

#[test]
fn bessel_clifford_example_evaluates() {
    let out = run(&["eval", "bessel-clifford", "--nu", "1.5", "--t", "-5.047"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let line = text
        .lines()
        .find(|l| l.starts_with("C_nu(t)"))
        .expect("missing C_nu(t) line");
    let v = value_of(line);
    assert!(
        (v - 3.3131e-5).abs() < 1e-8,
        "C_(3/2)(-5.047) printed as {v}, expected about 3.31e-5"
    );
}

#[test]
fn ono_example_reports_clean_suite() {
    let out = run(&["verify", "ono", "--alpha", "1", "--n-max", "50", "--d-max", "12"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["suite_id"], "ono-grid");
    assert_eq!(report["summary"]["failed"], 0);
    assert_eq!(report["summary"]["undetermined"], 0);
    assert!(report["summary"]["run"].as_u64().unwrap() > 0);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["certify", "--coeffs", "2,-3,1", "--bits", "32"][..],
        &["no-such-command"][..],
        &["eval", "gamma", "--x", "abc"][..],
        &["verify", "delta-difference", "--trials", "5", "--delta", "-1"][..],
        &["trace", "--laguerre-d", "0"][..],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 2, "args {args:?} should be a usage error");
        assert!(!stderr(&out).is_empty(), "args {args:?} left stderr empty");
    }
}

#[test]
fn exhausted_precision_exits_3() {
    // A deep trace capped at 64 bits cannot certify its columns.
    let out = run(&[
        "trace", "--laguerre-d", "5", "--laguerre-nu", "1.5", "--delta", "pi2/6",
        "--appell-d", "6", "--per-side", "2", "--bits", "64", "--max-bits", "64",
    ]);
    assert_eq!(code(&out), 3, "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("maximum configured precision"));
}

#[test]
fn seeded_suites_are_byte_deterministic() {
    let args = ["verify", "delta-difference", "--trials", "15", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "same seed must reproduce byte-identical output");

    let c = run(&["verify", "delta-difference", "--trials", "15", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout, "different seeds should differ (config echoes the seed)");
}

#[test]
fn out_flag_writes_file_and_keeps_stdout_quiet() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("zeros.json");
    let out = run(&[
        "verify", "zeros", "--count", "4", "--nu", "1/2",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).is_empty(), "--out should leave stdout empty");
    let text = std::fs::read_to_string(&path).expect("output file written");
    let report: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    assert_eq!(report["suite_id"], "zero-separation");
    assert_eq!(report["summary"]["failed"], 0);
}

#[test]
fn env_var_sets_default_precision() {
    let flag = run(&["eval", "gamma", "--x", "5.5", "--bits", "96"]);
    let env = bin()
        .args(["eval", "gamma", "--x", "5.5"])
        .env("DELTALP_BITS", "96")
        .output()
        .unwrap();
    assert_eq!(code(&env), 0);
    assert_eq!(flag.stdout, env.stdout, "DELTALP_BITS=96 must match --bits 96");
    let default = run(&["eval", "gamma", "--x", "5.5"]);
    assert_ne!(flag.stdout, default.stdout, "96-bit output should differ from 128-bit");
}

#[test]
fn printed_gamma_matches_reference() {
    let out = run(&["eval", "gamma", "--x", "5.5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let g = value_of(text.lines().find(|l| l.starts_with("Gamma(x)")).unwrap());
    let r = value_of(text.lines().find(|l| l.starts_with("1/Gamma(x)")).unwrap());
    assert!((g - 52.342_777_784_553_52).abs() < 1e-10);
    assert!((g * r - 1.0).abs() < 1e-12, "Gamma and 1/Gamma must be reciprocal");
}

#[test]
fn partition_csv_is_exact() {
    let out = run(&["eval", "partition", "--n-max", "5", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "n,p\n0,1\n1,1\n2,2\n3,3\n4,5\n5,7\n");
}

#[test]
fn jensen_partition_boundary_verdicts() {
    let at = |n: &str| {
        let out = run(&["jensen", "--seq", "partition", "--n", n, "--d", "2", "--certify"]);
        assert_eq!(code(&out), 0);
        stdout(&out)
    };
    assert!(at("24").contains("certification: NotHyperbolic"));
    assert!(at("25").contains("certification: Hyperbolic"));
}

#[test]
fn certify_isolates_integer_roots() {
    let out = run(&["certify", "--coeffs", "2,-3,1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("Hyperbolic"), "x^2-3x+2 must certify: {text}");
    assert!(text.contains("root  1: 1.0"), "first root should print as 1.0…: {text}");
    assert!(text.contains("root  2: 2.0"), "second root should print as 2.0…: {text}");
}

#[test]
fn trace_emits_well_formed_csv() {
    let out = run(&[
        "trace", "--laguerre-d", "5", "--laguerre-nu", "1.5", "--delta", "pi2/6",
        "--appell-d", "2", "--per-side", "3", "--check",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,branch_k,t,d"));
    let mut rows = 0usize;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 4, "malformed row {line:?}");
        for f in &fields {
            f.parse::<f64>().unwrap_or_else(|_| panic!("non-numeric field in {line:?}"));
        }
        rows += 1;
    }
    assert!(rows >= 60, "expected a full grid of rows, got {rows}");
    let checks = stderr(&out);
    assert!(checks.contains("0 certain violations"), "stderr: {checks}");
    assert!(checks.contains("0 out of tolerance"), "stderr: {checks}");
}
