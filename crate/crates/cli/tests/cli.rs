//! End-to-end tests of the binary: file handling, output schemas,
//! determinism, exit codes, and the verification suites.

use std::io::Write;
use std::process::{Command, Output};

fn permlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn write_matrix(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn perm_of_identity_four() {
    let f = write_matrix("4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    let out = permlab(&["perm", "--matrix", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn perm_of_all_ones_five() {
    let rows = std::iter::repeat("1 1 1 1 1\n").take(5).collect::<String>();
    let f = write_matrix(&format!("5\n{rows}"));
    let out = permlab(&["perm", "--matrix", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "120");
}

#[test]
fn perm_of_committed_fixture() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/rand6.txt");
    let out = permlab(&["perm", "--matrix", path]);
    assert!(out.status.success());
    // Frozen from the 720-term expansion run at fixture creation.
    assert_eq!(stdout(&out).trim(), "9");
}

#[test]
fn perm_reports_parse_errors_with_exit_two() {
    let f = write_matrix("2\n1 0\n");
    let out = permlab(&["perm", "--matrix", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = permlab(&["perm", "--matrix", "/nonexistent/never.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let out = permlab(&["perm"]);
    assert_eq!(out.status.code(), Some(2));
    let out = permlab(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn estimate_emits_the_fixed_json_schema_and_tracks_the_mean() {
    let f = write_matrix("3\n1 0 0\n0 1 0\n0 0 1\n");
    let out = permlab(&[
        "estimate",
        "--matrix",
        f.path().to_str().unwrap(),
        "--estimator",
        "trace",
        "--measure",
        "gaussian",
        "--d",
        "2",
        "--trials",
        "100000",
        "--seed",
        "42",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    // Field order is part of the schema; check it on the raw string since
    // a parsed map re-sorts the keys.
    let field_order = [
        "\"estimator\"",
        "\"measure\"",
        "\"d\"",
        "\"n\"",
        "\"trials\"",
        "\"mean\"",
        "\"variance\"",
        "\"critical_ratio\"",
        "\"stderr_mean\"",
        "\"seed\"",
    ];
    let mut last = 0;
    for key in field_order {
        let at = text.find(key).unwrap_or_else(|| panic!("missing {key}"));
        assert!(at >= last, "{key} out of order");
        last = at;
    }
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    let obj = v.as_object().unwrap();
    assert_eq!(obj.len(), field_order.len());
    assert_eq!(obj["estimator"], "trace");
    assert_eq!(obj["n"], 3);
    assert_eq!(obj["seed"], 42);
    let mean = obj["mean"].as_f64().unwrap();
    let se = obj["stderr_mean"].as_f64().unwrap();
    assert!((mean - 1.0).abs() <= 5.0 * se, "mean {mean} vs 1 (se {se})");
}

#[test]
fn estimate_symmetrized_mean_matches_the_exact_constant() {
    // a_d(3, 2) = 5/8.
    let f = write_matrix("3\n1 0 0\n0 1 0\n0 0 1\n");
    let out = permlab(&[
        "estimate",
        "--matrix",
        f.path().to_str().unwrap(),
        "--estimator",
        "trace_sym",
        "--measure",
        "gaussian",
        "--d",
        "2",
        "--trials",
        "100000",
        "--seed",
        "42",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let mean = v["mean"].as_f64().unwrap();
    let se = v["stderr_mean"].as_f64().unwrap();
    assert!((mean - 0.625).abs() <= 5.0 * se, "mean {mean} (se {se})");
}

#[test]
fn estimate_is_byte_identical_across_runs() {
    let f = write_matrix("2\n1 1\n1 1\n");
    let args = [
        "estimate",
        "--matrix",
        f.path().to_str().unwrap(),
        "--estimator",
        "trace_sym",
        "--measure",
        "haar",
        "--d",
        "2",
        "--trials",
        "2000",
        "--seed",
        "7",
    ];
    let a = permlab(&args);
    let b = permlab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let csv_args: Vec<&str> = args.iter().copied().chain(["--format", "csv"]).collect();
    let c = permlab(&csv_args);
    let d = permlab(&csv_args);
    assert_eq!(c.stdout, d.stdout);
    assert!(stdout(&c).starts_with(
        "estimator,measure,d,n,trials,mean,variance,critical_ratio,stderr_mean,seed\n"
    ));
}

#[test]
fn estimate_rejects_invalid_combinations() {
    let f = write_matrix("2\n1 1\n1 1\n");
    // Scalar estimator with a measure.
    let out = permlab(&[
        "estimate",
        "--matrix",
        f.path().to_str().unwrap(),
        "--estimator",
        "gg_sign",
        "--measure",
        "haar",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Matrix estimator without d.
    let out = permlab(&[
        "estimate",
        "--matrix",
        f.path().to_str().unwrap(),
        "--estimator",
        "frobenius",
        "--measure",
        "haar",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exact_suites_pass() {
    let out = permlab(&["verify", "--suite", "exact"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("[PASS] a_d three-route (n=7, d=8)"));
    assert!(!text.contains("[FAIL]"));
    assert!(text.lines().last().unwrap().contains("0 failed"));
}

#[test]
fn verify_with_low_cap_skips_but_passes() {
    let out = permlab(&["verify", "--suite", "exact", "--cap-n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("[SKIP]"));
    assert!(text.contains("beyond cap"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn verify_detects_an_injected_fault() {
    let out = permlab(&[
        "verify",
        "--suite",
        "a-d",
        "--inject-fault",
        "cycle-count",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    // The failure names the identity, the inputs, and both sides.
    assert!(text.contains("[FAIL] a_d three-route"));
    assert!(text.contains("closed"));
    assert!(text.contains("brute"));
}

#[test]
fn verify_statistical_smoke_with_reduced_trials() {
    let out = permlab(&[
        "verify",
        "--suite",
        "second-moment",
        "--trials",
        "20000",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn tables_contain_the_exact_anchor_values() {
    let out = permlab(&["tables", "--n-max", "3", "--d-max", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("n,d,a_d,a_d_dec,a2,a2_dec,a2_tilde,a2_tilde_dec"));
    let row = |n: u32, d: u32| {
        lines
            .iter()
            .find(|l| l.starts_with(&format!("{n},{d},")))
            .unwrap_or_else(|| panic!("row ({n},{d})"))
            .split(',')
            .map(String::from)
            .collect::<Vec<_>>()
    };
    // a_d at (3, 2) is the fraction 5/8.
    assert_eq!(row(3, 2)[2], "5/8");
    // a2 at (1, d) is 2.
    assert_eq!(row(1, 1)[4], "2");
    assert_eq!(row(1, 2)[4], "2");
    // ~a at (2, 1) is C(4, 2) = 6.
    assert_eq!(row(2, 1)[6], "6");
}

#[test]
fn matrix_written_by_the_library_round_trips_through_the_cli() {
    // A decimal-valued instance survives serialize -> CLI parse.
    let text = "3\n0 2 0.5\n1.25 0 1\n1 1 0\n";
    let f = write_matrix(text);
    let out = permlab(&["perm", "--matrix", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    // Two supported permutations: 2 * 1 * 1 and 0.5 * 1.25 * 1.
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!((value - 2.625).abs() < 1e-12);
}
