use std::process::{Command, Output};

use frobenius_core::verify::VerificationReport;
use serde_json::Value;

fn cphi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cphi"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_level_5_passes() {
    let o = cphi(&["verify", "--N", "5", "--nmax", "200"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("all checks pass\n"));
}

#[test]
fn verify_level_13_reports_b1() {
    let o = cphi(&["verify", "--N", "13", "--nmax", "200", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["N"], 13);
    assert_eq!(v["b"][1], "26");
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"cwy13"));
    assert!(names.contains(&"diagnostic.scope"));
}

#[test]
fn json_round_trips() {
    let o = cphi(&["verify", "--N", "13", "--nmax", "60", "--format", "json"]);
    let text = stdout(&o);
    let report: VerificationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(
        format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
        text
    );
}

#[test]
fn partitions_at_level_one() {
    let o = cphi(&[
        "expand", "--series", "cphi", "--N", "1", "--nmax", "10", "--format", "json",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let got: Vec<&str> = v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(
        got,
        ["1", "1", "2", "3", "5", "7", "11", "15", "22", "30", "42"]
    );
}

#[test]
fn invalid_levels_exit_2() {
    let o = cphi(&["verify", "--N", "25"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("squarefree"));
    let o = cphi(&["expand", "--series", "theta", "--N", "21", "--nmax", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("coprime to 6"));
    assert_eq!(cphi(&["verify"]).status.code(), Some(2));
    assert_eq!(cphi(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn failed_check_exits_1() {
    let o = cphi(&[
        "verify",
        "--N",
        "13",
        "--nmax",
        "200",
        "--ratio-tol",
        "1/1000000000000000000000000000000000000",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  asymptotic-trend"));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--N", "35", "--nmax", "80", "--format", "csv"];
    let a = cphi(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_cphi"))
        .args(args)
        .env("QSERIES_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("n,cphi,mainSum,b\n0,1,1,0\n1,1225,0,1225\n"));
}

#[test]
fn bad_thread_count_exits_2() {
    let o = Command::new(env!("CARGO_BIN_EXE_cphi"))
        .args(["bernoulli", "--k", "2", "--N", "5"])
        .env("QSERIES_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tables() {
    let o = cphi(&["table", "--which", "b1", "--N", "13,17", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "N,b1,expected,pass\n13,26,26,true\n17,170,170,true\n"
    );
    let o = cphi(&["table", "--which", "kolitsch", "--nmax", "60"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        cphi(&["table", "--which", "kolitsch", "--nmax", "10"])
            .status
            .code(),
        Some(2)
    );
    let o = cphi(&[
        "table",
        "--which",
        "cusp-constants",
        "--N",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(
        stdout(&o),
        "N,d,direct,viaGauss,pass\n5,1,-1/5*sqrt(5),-1/5*sqrt(5),true\n5,5,1,1,true\n"
    );
}

#[test]
fn gauss_reports_both_routes() {
    let o = cphi(&[
        "gauss", "--dim", "4", "--a", "1", "--c", "5", "--format", "json",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["closedForm"], "-25*sqrt(5)");
    assert_eq!(v["exact"], "-25*sqrt(5)");
    assert_eq!(v["agrees"], true);
}

#[test]
fn ratios_skip_vanishing_sums() {
    let o = cphi(&["ratios", "--N", "35", "--nmax", "3", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["skipped"][0], 1);
}
