//! End-to-end checks of the `kappa` binary: golden outputs, exit codes,
//! format stability, and the JSON wire formats.

use std::process::{Command, Output};

fn kappa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kappa"))
        .args(args)
        .env_remove("KAPPA_LOG")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = kappa(args);
    assert!(
        out.status.success(),
        "kappa {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn d_table_csv_golden() {
    assert_eq!(
        stdout(&["d-table", "--max-i", "5", "--format", "csv"]),
        "1,12\n2,2\n3,120\n4,2\n5,252\n"
    );
}

#[test]
fn d_table_csv_header_and_jobs() {
    let plain = stdout(&["d-table", "--max-i", "8", "--format", "csv"]);
    let threaded = stdout(&["d-table", "--max-i", "8", "--format", "csv", "--jobs", "4"]);
    assert_eq!(plain, threaded, "--jobs must not reorder output");
    let with_header = stdout(&["d-table", "--max-i", "8", "--format", "csv", "--header"]);
    assert_eq!(with_header, format!("i,D_value\n{plain}"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["d-table", "--max-i", "6", "--format", "json"],
        vec!["bss", "--format", "json"],
        vec!["bss", "--max-deg", "8", "--format", "json"],
        vec!["bernoulli", "--max-i", "4", "--format", "csv"],
    ] {
        let first = stdout(&args);
        let second = stdout(&args);
        assert_eq!(first, second, "unstable output for {args:?}");
    }
}

#[test]
fn akita_marks_vanishing_indices() {
    let out = stdout(&["akita", "--p", "5", "--max-i", "8", "--format", "csv"]);
    let marked: Vec<u64> = out
        .lines()
        .filter(|l| l.ends_with(",true"))
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(marked, vec![3, 7]);
}

#[test]
fn divisor_json_schema() {
    let out = stdout(&["d-table", "--max-i", "3", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    let rows = rows.as_array().expect("array of reports");
    assert_eq!(rows.len(), 3);
    for row in rows {
        let obj = row.as_object().unwrap();
        for key in ["i", "D", "D_value", "lower", "upper", "akita", "citations"] {
            assert!(obj.contains_key(key), "missing field {key}");
        }
        assert!(obj["i"].is_u64());
        assert!(obj["D"].is_object());
        for (p, e) in obj["D"].as_object().unwrap() {
            assert!(p.parse::<u64>().is_ok(), "prime keys are decimal strings");
            assert!(e.is_u64());
        }
        assert!(obj["D_value"].is_string());
        assert!(obj["lower"].is_string());
        assert!(obj["upper"].is_string());
        assert!(obj["akita"].is_object());
        assert!(obj["citations"].is_array());
    }
    assert_eq!(rows[0]["D_value"], "12");
    assert_eq!(rows[2]["D"]["2"], 3);
}

#[test]
fn bss_json_schema() {
    let out = stdout(&["bss", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    let obj = report.as_object().unwrap();
    let keys: Vec<&String> = obj.keys().collect();
    assert_eq!(
        keys,
        ["basis_sizes", "boundaries", "cycles", "flags", "primitive"]
    );
    assert_eq!(obj["basis_sizes"]["2,0"], 3);
    assert_eq!(obj["cycles"]["y4"], true);
    assert_eq!(obj["flags"]["h3_two_torsion_is_Z4"], true);
    assert_eq!(obj["flags"]["squaring_map_not_injective"], true);
    assert_eq!(obj["flags"]["not_polynomial"], true);
    let first = &obj["boundaries"][0];
    let element = first["element"].as_str().unwrap();
    assert!(
        element.contains("Q^3[a0]*a0^-2"),
        "paper-style rendering: {element}"
    );
}

#[test]
fn bernoulli_rows() {
    assert_eq!(
        stdout(&["bernoulli", "--max-i", "3", "--format", "csv"]),
        "1,1/6,12\n2,1/30,120\n3,1/42,252\n"
    );
    assert_eq!(
        stdout(&["bernoulli", "--i", "5", "--format", "csv"]),
        "5,5/66,132\n"
    );
}

#[test]
fn valuation_query() {
    assert_eq!(
        stdout(&[
            "valuation",
            "--p",
            "2",
            "--k",
            "5",
            "--s",
            "2",
            "--format",
            "csv"
        ]),
        "2,5,2,3,3\n"
    );
    // Default k comes from the canonical choice.
    let text = stdout(&["valuation", "--p", "3", "--s", "2"]);
    assert!(text.contains("nu_3(1 - (-4)^2) = 1"), "got: {text}");
}

#[test]
fn wu_series_rows() {
    assert_eq!(
        stdout(&["wu", "--p", "3", "--trunc", "6", "--format", "csv"]),
        "0,1\n1,0\n2,2\n3,0\n4,1\n5,0\n6,2\n"
    );
}

#[test]
fn verify_all_passes() {
    let out = kappa(&["verify", "--suite", "all"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "verify failed:\n{text}");
    assert!(text.lines().any(|l| l.starts_with("PASS  divisor.golden")));
    assert!(!text.contains("\nFAIL"), "unexpected failures:\n{text}");
}

#[test]
fn verify_single_suite_exit_zero() {
    assert!(kappa(&["verify", "--suite", "wu"]).status.success());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(kappa(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        kappa(&["d-table"]).status.code(),
        Some(2),
        "missing --max-i"
    );
    assert_eq!(
        kappa(&["akita", "--p", "6", "--max-i", "3"]).status.code(),
        Some(2),
        "non-prime p"
    );
    assert_eq!(
        kappa(&["verify", "--suite", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        kappa(&["bernoulli", "--i", "501"]).status.code(),
        Some(2),
        "index cap"
    );
    assert_eq!(
        kappa(&["bernoulli"]).status.code(),
        Some(2),
        "needs --i or --max-i"
    );
}

#[test]
fn stamp_stays_out_of_the_body() {
    let plain = kappa(&["d-table", "--max-i", "2", "--format", "csv"]);
    let stamped = kappa(&["d-table", "--max-i", "2", "--format", "csv", "--stamp"]);
    assert_eq!(plain.stdout, stamped.stdout);
    assert!(String::from_utf8_lossy(&stamped.stderr).starts_with("# kappa"));
}

#[test]
fn logging_never_touches_stdout() {
    let quiet = kappa(&["d-table", "--max-i", "3", "--format", "csv"]);
    let noisy = Command::new(env!("CARGO_BIN_EXE_kappa"))
        .args(["d-table", "--max-i", "3", "--format", "csv", "--jobs", "2"])
        .env("KAPPA_LOG", "debug")
        .output()
        .expect("binary runs");
    assert_eq!(quiet.stdout, noisy.stdout);
    assert!(
        !String::from_utf8_lossy(&noisy.stderr).is_empty(),
        "debug log expected"
    );
}
