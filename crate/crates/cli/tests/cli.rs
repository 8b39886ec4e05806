use std::process::{Command, Output};

use densecap::io::state_to_json;
use densecap::states::werner_like;
use serde_json::Value;

fn densecap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_densecap")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn measure_singlet() {
    let v = json(&densecap(&["measure", "--state", "singlet"]));
    assert!(v["entropy"].as_f64().unwrap().abs() < 1e-12);
    assert!((v["coherentInfo"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["iSd"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(v["isPpt"], false);
    assert_eq!(v["reductionB"], false);
}

#[test]
fn measure_maximally_mixed() {
    let v = json(&densecap(&["measure", "--state", "mixed", "--d", "4"]));
    assert!(v["mutualInfo"].as_f64().unwrap().abs() < 1e-12);
    assert!(v["iSd"].as_f64().is_some());
    assert_eq!(v["isPpt"], true);
}

#[test]
fn measure_tiles() {
    let v = json(&densecap(&["measure", "--state", "tiles"]));
    assert_eq!(v["dA"], 3);
    assert_eq!(v["isPpt"], true);
    assert_eq!(v["coherentInfo"].as_f64().unwrap(), 0.0);
}

#[test]
fn state_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    std::fs::write(&path, state_to_json(&werner_like(0.9f64).unwrap())).unwrap();
    let from_file = json(&densecap(&["measure", "--state", path.to_str().unwrap()]));
    let builtin = json(&densecap(&["measure", "--state", "werner", "--p", "0.9"]));
    assert_eq!(from_file, builtin);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dA\": 2, \"dB\": 2, \"rho\": [1]}").unwrap();
    for args in [
        vec!["measure", "--state", "/nonexistent/state.json"],
        vec!["measure", "--state", bad.to_str().unwrap()],
        vec!["bennett", "--p0", "1.5"],
        vec!["capacity", "--state", "singlet", "--dout", "0"],
    ] {
        let out = densecap(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn unparseable_flags_are_rejected() {
    assert!(!densecap(&["capacity", "--objective", "nope"]).status.success());
}

#[test]
fn sample_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let out =
        densecap(&["sample", "--trials", "5", "--restarts", "2", "--iters", "100", "--out", csv.to_str().unwrap()]);
    let summary = json(&out);
    assert_eq!(summary["trials"], 5);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("seed,coherent_before,coherent_after,gain"));
    assert_eq!(lines.count(), 5);
    let side: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("s.summary.json")).unwrap()).unwrap();
    assert_eq!(side, summary);
}

#[test]
fn capacity_history_csv() {
    let out = densecap(&["capacity", "--state", "singlet", "--restarts", "2", "--iters", "50", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 2);
}

#[test]
fn bennett_default() {
    let v = json(&densecap(&["bennett"]));
    assert!((v["gain"].as_f64().unwrap() - 0.468_995_593_589_281_2).abs() < 1e-9);
}

#[test]
fn verify_pure_preset() {
    let v = json(&densecap(&["verify", "--preset", "pure", "--trials", "10"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["fallbackCount"], 0);
}
