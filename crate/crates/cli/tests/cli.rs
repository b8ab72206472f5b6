use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kstates")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn kt_report_top_level() {
    let out = run(&["report", "--kt", "3,1", "--json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(r#"{"ranks":{"3":1,"4":1},"s":3}"#));
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["hfk"]["doubled"], false);
    assert_eq!(v["hfk"]["status-by-s"]["3"], "exact");
    assert_eq!(v["alexander"]["coeffs"], serde_json::json!({"0": 1}));
    assert_eq!(v["genus"]["lower"], 3);
}

#[test]
fn mutants_are_distinguished() {
    for r in ["2,1", "3,1"] {
        let v = json(&["compare-mutants", "--kt", r, "--conway", r, "--json"]);
        assert_eq!(v["distinguished"], true, "r,n = {r}");
    }
}

#[test]
fn pretzel_census() {
    let v = json(&["census", "--pretzel", "5,-3,7", "--json"]);
    assert_eq!(v["states"], 71);
    assert_eq!(v["input"]["crossings"], 15);
}

#[test]
fn table_entries_and_formats() {
    let v = json(&["report", "--table", "9_43", "--json"]);
    assert_eq!(v["hfk"]["all_exact"], true);
    assert_eq!(json(&["signature", "--table", "3_1", "--json"])["signature"], -2);
    let csv = run(&["census", "--table", "3_1", "--csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "s,m,count\n-1,-2,1\n0,-1,1\n1,0,1\n");
    let dot = run(&["order", "--table", "4_1", "--dot"]);
    assert_eq!(String::from_utf8(dot.stdout).unwrap().matches("digraph").count(), 3);
}

#[test]
fn pd_file_input() {
    let dir = std::env::temp_dir().join(format!("kstates-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trefoil.pd");
    std::fs::write(&path, "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\nmark: 2\n").unwrap();
    let v = json(&["alexander", "--pd", path.to_str().unwrap(), "--json"]);
    assert_eq!(v["determinant"], 3);
    assert_eq!(v["input"]["mark"], 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["report"]).status.code(), Some(1));
    assert_eq!(run(&["report", "--kt", "x"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["census", "--pd", "/nonexistent/file.pd"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--pretzel", "2,3,5"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--kt", "4,2", "--cap", "10"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["report", "--conway", "2,1", "--json"]).stdout;
    let b = Command::new(env!("CARGO_BIN_EXE_kstates"))
        .args(["report", "--conway", "2,1", "--json"])
        .env("RAYON_NUM_THREADS", "1")
        .output()
        .unwrap()
        .stdout;
    assert_eq!(a, b);
}
