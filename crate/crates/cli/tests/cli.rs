use std::process::{Command, Output};

use daehee_core::sequences::SequenceDump;
use daehee_core::{BiPoly, CheckReport, IdentityId, Status};
use serde_json::Value;

fn daehee(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_daehee"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = daehee(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn gen_degen_daehee_numbers() {
    let out = daehee(&["gen", "--family", "degen-daehee", "--nmax", "4", "--x", "0"]);
    assert!(out.status.success());
    let dump: SequenceDump = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(dump.terms.len(), 5);
    assert_eq!(dump.argument, "number");
    assert_eq!(
        dump.values().unwrap()[1],
        "1/2*λ - 1/2".parse::<BiPoly>().unwrap()
    );
}

#[test]
fn gen_daehee_numbers_csv() {
    let out = daehee(&[
        "gen", "--family", "daehee", "--nmax", "3", "--x", "0", "--format", "csv",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n,value\n0,1\n1,-1/2\n2,2/3\n3,-3/2\n");
}

#[test]
fn gen_lambda_zero_gives_classical_prefix() {
    let degen = ok_json(&[
        "gen",
        "--family",
        "degen-daehee",
        "--nmax",
        "2",
        "--lambda",
        "0",
    ]);
    let classical = ok_json(&["gen", "--family", "daehee", "--nmax", "2"]);
    assert_eq!(degen["terms"], classical["terms"]);
    assert_eq!(degen["lambda"], "0");
}

#[test]
fn gen_is_byte_deterministic_and_round_trips() {
    let args = [
        "gen",
        "--family",
        "degen-bernoulli-higher",
        "--r",
        "3",
        "--nmax",
        "6",
    ];
    let a = stdout(&daehee(&args));
    let b = stdout(&daehee(&args));
    assert_eq!(a, b);
    let dump: SequenceDump = serde_json::from_str(&a).unwrap();
    let reprinted: Vec<String> = dump
        .values()
        .unwrap()
        .iter()
        .map(BiPoly::to_string)
        .collect();
    let original: Vec<String> = dump.terms.iter().map(|t| t.value.clone()).collect();
    assert_eq!(reprinted, original);
}

#[test]
fn gen_writes_out_file() {
    let dir = std::env::temp_dir().join(format!("daehee-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    let out = daehee(&[
        "gen",
        "--family",
        "stirling-first-degenerate",
        "--nmax",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let rows: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 10);
    assert_eq!(rows[4]["value"], "-1 + 1*λ");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn rational_flag_values() {
    let half = ok_json(&[
        "gen",
        "--family",
        "bernoulli",
        "--nmax",
        "4/2",
        "--x",
        "1/2",
    ]);
    assert_eq!(half["argument"], "x=1/2");
    let terms = half["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    // B_1(1/2) = 0, B_2(1/2) = -1/12
    assert_eq!(terms[1]["value"], "0");
    assert_eq!(terms[2]["value"], "-1/12");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["gen", "--family", "no-such-family"][..],
        &["gen", "--family", "degen-daehee", "--format", "csv"],
        &["gen", "--family", "daehee", "--nmax", "1/2"],
        &["gen", "--family", "daehee", "--lambda", "1/0"],
        &["gen", "--family", "daehee", "-n", "3"],
        &["check"],
        &["check", "--all", "--series-order", "3"],
        &["limit", "--family", "bernoulli"],
        &["limit", "--family", "degen-daehee", "--lambda", "1"],
    ] {
        let out = daehee(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn check_single_identity() {
    let out = daehee(&["check", "--id", "T8", "--rmax", "3", "--nmax", "6"]);
    assert!(out.status.success());
    let reports: Vec<CheckReport> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].id, IdentityId::T8);
    assert_eq!(reports[0].params["r"], [1, 3]);
}

#[test]
fn check_t7_reports_variant() {
    let out = daehee(&["check", "--id", "T7", "--nmax", "6", "--sequential"]);
    assert!(out.status.success());
    let reports: Vec<CheckReport> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(reports[0].status, Status::VariantMatched);
    assert!(reports[0]
        .variant
        .as_ref()
        .unwrap()
        .starts_with("confirmed sum over m = 1..n+1"));
}

#[test]
fn limit_tables() {
    let t = ok_json(&["limit", "--family", "degen-bernoulli", "--nmax", "6"]);
    assert_eq!(t["all_equal"], true);
    assert_eq!(t["rows"].as_array().unwrap().len(), 7);

    let t = ok_json(&["limit", "--family", "degen-daehee", "--nmax", "0"]);
    assert_eq!(t["rows"].as_array().unwrap().len(), 1);
    assert_eq!(t["rows"][0]["at_lambda_zero"], "1");
    assert_eq!(t["rows"][0]["classical"], "1");

    let multiple = ok_json(&[
        "limit",
        "--family",
        "multiple-degen-daehee",
        "--k",
        "1",
        "--nmax",
        "6",
    ]);
    let degen = ok_json(&["gen", "--family", "degen-daehee", "--nmax", "6", "--x", "0"]);
    let column: Vec<&Value> = multiple["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| &r["degenerate"])
        .collect();
    let expected: Vec<&Value> = degen["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| &t["value"])
        .collect();
    assert_eq!(column, expected);
}

#[test]
fn limit_csv_needs_constants() {
    let out = daehee(&[
        "limit",
        "--family",
        "degen-daehee-higher",
        "--r",
        "2",
        "--nmax",
        "3",
        "--x",
        "0",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("n,at_lambda_zero,classical,equal\n0,1,1,true\n"));
    let out = daehee(&[
        "limit",
        "--family",
        "degen-daehee-higher",
        "--r",
        "2",
        "--nmax",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
