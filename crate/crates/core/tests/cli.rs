//! End-to-end tests of the `qseries` binary: output and exit codes.

use std::process::{Command, Output};

use qseries::congruence::{ClaimRecord, ClaimReport};

fn qseries(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qseries")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_examples() {
    let o = qseries(&["expand", "f2^2/f1^3", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 3 7 16\n");
    assert_eq!(stdout(&qseries(&["expand", "f1", "--order", "8"])), "1 -1 -1 0 0 1 0 1\n");
    let o = qseries(&["expand", "f1^3", "--order", "700", "--mod", "7", "--support", "7"]);
    assert_eq!(stdout(&o), "{0,1,3}\n");
}

#[test]
fn expand_defaults_to_small_order() {
    let o = qseries(&["expand", "1/f1"]);
    assert_eq!(stdout(&o).split_whitespace().count(), 50);
}

#[test]
fn expand_fixture_prints_exact_coefficients() {
    let o = qseries(&["expand", "--fixture", "a3-seven-dissection", "--order", "3"]);
    assert_eq!(o.status.code(), Some(0));
    // a_3(2), a_3(9), a_3(16)
    let got: Vec<String> = stdout(&o).split_whitespace().map(str::to_string).collect();
    let want: Vec<String> = [2u64, 9, 16]
        .iter()
        .map(|&n| qseries::partitions::count(qseries::ColoredFamilySpec::odd_colored(3), n).to_string())
        .collect();
    assert_eq!(got, want);
    assert_eq!(got[0], "7");
}

#[test]
fn expand_parse_error_exits_two_with_offset() {
    let o = qseries(&["expand", "f1^"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("offset 3"), "{err}");
    assert_eq!(qseries(&["expand", "f1", "--fixture", "theorem13"]).status.code(), Some(2));
    assert_eq!(qseries(&["expand", "--fixture", "nope"]).status.code(), Some(2));
}

#[test]
fn expand_json_and_csv() {
    let o = qseries(&["--format", "json", "expand", "f1^-1", "--order", "5", "--mod", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1", "1", "2", "0", "2"]));
    assert_eq!(v["modulus"], 3);
    let o = qseries(&["expand", "f1", "--order", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,coefficient\n0,1\n1,-1\n2,-1\n");
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&qseries(&["count", "a", "3", "3"])), "16\n");
    assert_eq!(stdout(&qseries(&["count", "a", "1", "4"])), "5\n");
    assert_eq!(stdout(&qseries(&["count", "a", "2", "2"])), "4\n");
    assert_eq!(qseries(&["count", "c", "2", "2"]).status.code(), Some(2));
    assert_eq!(qseries(&["count", "a", "0", "2"]).status.code(), Some(2));
    assert_eq!(qseries(&["count", "a", "-1", "2"]).status.code(), Some(2));
}

#[test]
fn count_prints_unbounded_integers() {
    let out = stdout(&qseries(&["count", "a", "8", "400"]));
    let digits = out.trim();
    assert!(digits.len() > 30 && digits.chars().all(|c| c.is_ascii_digit()), "{digits}");
}

#[test]
fn enumerate_lists_and_caps() {
    let o = qseries(&["enumerate", "a", "3", "3"]);
    let lines: Vec<&str> = std::str::from_utf8(&o.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 16);
    assert_eq!(lines[0], "(3_3)");
    assert_eq!(lines[15], "(1_1, 1_1, 1_1)");
    assert_eq!(qseries(&["enumerate", "a", "1", "41"]).status.code(), Some(2));
}

#[test]
fn verify_claim_exit_codes() {
    let ok =
        qseries(&["verify", "claim", "--family", "a", "--k", "3", "--mod", "7", "--residue", "2", "--upto", "300"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad =
        qseries(&["verify", "claim", "--family", "a", "--k", "1", "--mod", "7", "--residue", "0", "--upto", "10"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("n=0 (value 1)"));
    let usage = qseries(&["verify", "claim", "--family", "a", "--k", "1", "--mod", "7", "--residue", "9"]);
    assert_eq!(usage.status.code(), Some(2));
    assert_eq!(
        qseries(&["verify", "claim", "--family", "a", "--k", "1", "--mod", "1", "--residue", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_json_round_trips_through_schema() {
    let o = qseries(&[
        "verify",
        "claim",
        "--family",
        "a",
        "--k",
        "1",
        "--mod",
        "7",
        "--residue",
        "0",
        "--upto",
        "10",
        "--format",
        "json",
    ]);
    let raw: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let obj = &raw[0];
    let keys: Vec<&str> = obj.as_object().unwrap().keys().map(String::as_str).collect();
    for key in ["family", "k", "modulus", "residue", "checked_up_to", "holds", "counterexample", "source"] {
        assert!(keys.contains(&key), "missing {key}");
    }
    assert_eq!(obj["counterexample"], serde_json::json!({"n": 0, "value": "1"}));
    let records: Vec<ClaimRecord> = serde_json::from_slice(&o.stdout).unwrap();
    let report = ClaimReport::try_from(records[0].clone()).unwrap();
    assert!(!report.holds());
    assert_eq!(serde_json::to_value(report.to_record()).unwrap(), *obj);
}

#[test]
fn verify_subcommands() {
    assert_eq!(qseries(&["verify", "dissection", "--upto", "100"]).status.code(), Some(0));
    assert_eq!(qseries(&["verify", "seven", "--upto", "30"]).status.code(), Some(0));
    assert_eq!(
        qseries(&["verify", "seven", "--upto", "30"]).stdout,
        qseries(&["verify", "theorem14", "--upto", "30"]).stdout
    );
    assert_eq!(qseries(&["verify", "corollary", "--jmax", "1", "--upto", "30"]).status.code(), Some(0));
    assert_eq!(
        qseries(&["verify", "frobenius", "--a", "1", "--b", "2", "--p", "3", "--order", "200"]).status.code(),
        Some(0)
    );
    assert_eq!(
        qseries(&["verify", "frobenius", "--a", "1", "--b", "1", "--p", "4", "--order", "50"]).status.code(),
        Some(1)
    );
    let proof = qseries(&["verify", "proof", "--k", "4"]);
    assert_eq!(proof.status.code(), Some(0));
    assert!(stdout(&proof).contains("{0,1,2,3,5,6} excludes 4"));
    assert_eq!(qseries(&["verify", "proof", "--k", "2"]).status.code(), Some(2));
    assert_eq!(qseries(&["verify", "bogus"]).status.code(), Some(2));
}

#[test]
fn scan_outputs() {
    let o = qseries(&["scan", "--kmax", "7", "--mod", "7", "--upto", "300", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let records: Vec<ClaimRecord> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(records.len(), 49);
    let theorem: Vec<(u32, u64)> = records
        .iter()
        .filter(|r| serde_json::to_value(r.source).unwrap() == "theorem")
        .map(|r| (r.k, r.residue))
        .collect();
    assert_eq!(theorem, vec![(1, 5), (3, 2), (4, 4), (5, 6), (7, 3)]);
    assert!(records.iter().filter(|r| r.k == 3 && r.residue == 2).all(|r| r.holds));

    let csv = stdout(&qseries(&["scan", "--kmax", "1", "--mod", "5", "--upto", "300", "--format", "csv"]));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("family,k,modulus,residue,checked_upto,holds,source"));
    assert!(csv.contains("a,1,5,4,300,true,theorem"));

    let eleven = stdout(&qseries(&["scan", "--kmax", "1", "--mod", "11", "--upto", "200", "--format", "csv"]));
    assert!(eleven.contains("a,1,11,6,200,true,theorem"));

    assert_eq!(qseries(&["scan", "--kmax", "1", "--mod", "7", "--upto", "10"]).status.code(), Some(2));
    assert_eq!(qseries(&["scan", "--kmax", "0", "--mod", "7"]).status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["scan", "--kmax", "4", "--mod", "7", "--upto", "60", "--format", "json"];
    assert_eq!(qseries(&args).stdout, qseries(&args).stdout);
    let args = ["verify", "proof", "--k", "5", "--format", "json"];
    assert_eq!(qseries(&args).stdout, qseries(&args).stdout);
}
