use std::process::{Command, Output};

use dyform::suites::without_timings;
use serde_json::Value;

fn dyform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyform")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn full_verify_passes_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = dyform(&[
            "verify", "--suite", "all", "--f", "2", "--n-max", "3", "--m", "4", "--samples", "100", "--seed", "42",
            "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        v
    };
    let a = run("a.json");
    let b = run("b.json");
    assert_eq!(without_timings(&a), without_timings(&b));
    assert_eq!(a["summary"]["fail"], 0);
    assert_eq!(a["field"]["q"], 4);
    assert_eq!(a["ring"]["m"], 4);
    let keys: Vec<&String> = a.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["version", "config", "field", "ring", "checks", "summary"]);
}

#[test]
fn seed_changes_samples_but_not_verdicts() {
    let a = dyform(&["verify", "--suite", "matgrp", "--samples", "20", "--seed", "1"]);
    let b = dyform(&["verify", "--suite", "matgrp", "--samples", "20", "--seed", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
}

#[test]
fn negative_control_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("checks.csv");
    let o = dyform(&["verify", "--suite", "gf2", "--negative-control", "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let last = report["checks"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["status"], "fail");
    assert!(!last["witness"].is_null());
    let table = std::fs::read_to_string(csv).unwrap();
    assert_eq!(table.lines().next(), Some("id,status,elapsed_ms"));
    assert!(table.lines().any(|l| l.starts_with("negative_control,fail,")));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--suite", "matgrp", "--m", "1"][..],
        &["verify", "--suite", "nonsense"],
        &["verify", "--f", "0"],
        &["kl", "--big-n", "2", "--x", "0"],
        &["kl", "--big-n", "2", "--x", "g^x"],
        &["conductor", "--n", "0"],
        &["frobnicate"],
    ] {
        let o = dyform(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn single_queries() {
    let o = dyform(&["kl", "--f", "3", "--big-n", "4", "--x", "g^5"]);
    assert_eq!(stdout(&o).trim(), "-25");
    let o = dyform(&["kl", "--f", "2", "--big-n", "2", "--x", "1", "--brute"]);
    assert_eq!(stdout(&o).trim(), "3");
    let o = dyform(&["conductor", "--n", "2", "--q", "4"]);
    assert_eq!(stdout(&o).trim(), r#"{"artin_rs":28,"swan_ad":2,"gamma":"4^6"}"#);
    let o = dyform(&["conductor", "--n", "1", "--q", "2", "--full"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["artin_ad"], 4);
    assert_eq!(v["depth_group"], "1/2");
}

#[test]
fn characters_at_family_and_files() {
    let sp: Value = serde_json::from_str(&stdout(&dyform(&["char", "--f", "1", "--n", "1"]))).unwrap();
    let tw: Value = serde_json::from_str(&stdout(&dyform(&["twisted", "--f", "1", "--n", "1"]))).unwrap();
    assert_eq!(sp["value"], 1);
    assert_eq!(tw["value"], 1);

    // h_1 over Z/16: [[1 - 2, 1], [-2, 1]] in Teichmüller digits.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    std::fs::write(&path, r#"{"n_dim": 2, "entries": [[[1, 1, 1, 1], [1]], [[0, 1, 1, 1], [1]]]}"#).unwrap();
    let o = dyform(&["char", "--f", "1", "--n", "1", "--matrix", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, sp);

    std::fs::write(&path, r#"{"n_dim": 2, "entries": [[[1], [0]], [[0], [1]]]}"#).unwrap();
    let o = dyform(&["char", "--f", "1", "--n", "1", "--matrix", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn endoscopy_grid() {
    let o = dyform(&["endoscopy", "--f", "2", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 2 * 9);
    assert!(rows.iter().all(|r| r["holds"] == true));
}
