use std::io::Write;
use std::process::{Command, Output};

fn fjrw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fjrw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_text() {
    let o = fjrw(&["analyze", "x1^2*x2 + x2^3*x1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("weights: 2/5, 1/5"));
    assert!(s.contains("central charge: 4/5"));
    assert!(s.contains("milnor number: 6"));
    assert!(s.contains("class: Loop(2,3)"));
}

#[test]
fn analyze_json_round_trips() {
    let o = fjrw(&["analyze", "x1^2*x2 + x2^3*x1", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["weights"][0], "2/5");
    assert_eq!(v["central_charge"], "4/5");
    assert_eq!(v["milnor_number"], 6);
    assert_eq!(v["class"], "Loop(2,3)");
}

#[test]
fn non_invertible_input_exits_one() {
    let o = fjrw(&["analyze", "x1*x2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("error"));
}

#[test]
fn parse_error_exits_one() {
    let o = fjrw(&["analyze", "x1^"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn mirror_check_json() {
    let o = fjrw(&["mirror-check", "x1^2*x2 + x2^2*x1", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let m = &v["mirror"];
    assert_eq!(m["passed"], true);
    assert_eq!(m["iso"]["is_iso"], true);
    assert_eq!(m["iso"]["scalar_c"], "3");
    assert_eq!(m["dims"][0], 4);
    assert_eq!(m["dims"][1], 4);
    assert_eq!(m["poincare_equal"], true);
}

#[test]
fn state_space_json() {
    let o = fjrw(&["state-space", "x1^2*x2 + x2^3*x1", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["state_space"]["dimension"], 6);
    assert_eq!(v["group"]["order"], 5);
    assert_eq!(v["group"]["cyclic"], true);
}

#[test]
fn ring_table_has_trace() {
    let o = fjrw(&["ring", "x1^2*x2 + x2^2*x1", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["ring_table"]["products"].as_array().unwrap().len() >= 4);
    assert!(!v["trace"].as_array().unwrap().is_empty());
}

#[test]
fn corpus_small_counts() {
    let o = fjrw(&["corpus", "--max-exponent", "3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["pairs"], 4);
    assert_eq!(v["summary"]["passed"], 4);
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn corpus_bound_below_two_is_an_error() {
    let o = fjrw(&["corpus", "--max-exponent", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical() {
    let a = fjrw(&["ring", "x1^3*x2 + x2^3*x1", "--format", "json"]);
    let b = fjrw(&["ring", "x1^3*x2 + x2^3*x1", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn file_input_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("w.txt");
    let mut f = std::fs::File::create(&input).unwrap();
    writeln!(f, "x1^2*x2 + x2^2*x1").unwrap();
    let out = dir.path().join("report.json");
    let o = fjrw(&[
        "analyze",
        &format!("@{}", input.display()),
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["class"], "Loop(2,2)");
}

#[test]
fn milnor_table_for_fermat() {
    let o = fjrw(&["milnor", "x1^3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["milnor_number"], 2);
    assert_eq!(v["pairing"]["basis"].as_array().unwrap().len(), 2);
}
