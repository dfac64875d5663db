use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_trinomial"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_ex3() {
    let out = run(&["check"], "2,3;2,3;5");
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"cylinder":"NoCylinder","factorial":true,"homogeneous":true,"rigid":"Rigid"}"#
    );
}

#[test]
fn check_accepts_json_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ex2.json");
    std::fs::write(&path, r#"{"l0":[1,2],"l1":[2],"l2":[3]}"#).unwrap();
    let v = json_of(&run(&["check", "--input", path.to_str().unwrap()], ""));
    assert_eq!(v["rigid"], "NotRigid");
    let v = json_of(&run(&["check", "--input", "-"], r#"{"l0":[1,2],"l1":[2],"l2":[3]}"#));
    assert_eq!(v["rigid"], "NotRigid");
}

#[test]
fn check_reports_scope_as_verdicts() {
    let v = json_of(&run(&["check"], "2;2;3"));
    assert_eq!(v["factorial"], false);
    assert_eq!(v["rigid"], "OutOfTheoremScope");
    let v = json_of(&run(&["check"], "1;2;3"));
    assert_eq!(v["factorial"], Value::Null);
}

#[test]
fn eval_m_ex4_at_deg_f() {
    // deg f; (6,0) in the coordinates of the basis {(6,0,3,2),(-1,1,0,0)}
    let g = json_of(&run(&["grading"], "1,1;2;3"));
    let mu: Vec<String> = g["mu"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
    let v = json_of(&run(&["eval-m", "--m", &mu.join(",")], "1,1;2;3"));
    assert_eq!(v["dims"], serde_json::json!({"ah": 2, "oracle": 2, "match": true}));
    assert_eq!(v["h"]["0"], "3/1");
    assert_eq!(v["h"]["1"], "-2/1");
    assert_eq!(v["h"]["inf"], "0/1");
}

#[test]
fn eval_m_outside_cone_and_negative_input() {
    let v = json_of(&run(&["eval-m", "--m", "-1,0"], "1,1;2;3"));
    assert_eq!(v["in_weight_cone"], false);
    assert_eq!(v["dims"]["match"], true);
    assert_eq!(run(&["eval-m", "--m", "1,2,3"], "1,1;2;3").status.code(), Some(2));
    assert_eq!(run(&["eval-m", "--m", "1,x"], "1,1;2;3").status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["check"], "2,3;;5").status.code(), Some(2));
    assert_eq!(run(&["check"], "2,0;2;3").status.code(), Some(2));
    assert_eq!(run(&["check"], r#"{"l0":[2],"l1":[3]}"#).status.code(), Some(2));
    let out = run(&["divisor"], "2;2;3");
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not factorial"));
    assert_eq!(run(&["grading"], "1;2;3").status.code(), Some(3));
    assert_eq!(run(&["derivation"], "2;2;3").status.code(), Some(3));
}

#[test]
fn derivation_on_ex2() {
    let v = json_of(&run(&["derivation"], "1,2;2;3"));
    let d = &v["derivations"][0];
    assert_eq!(d["unit"], "T01");
    assert_eq!(d["partner"], "T11");
    assert_eq!(d["annihilates_f"], true);
    assert_eq!(d["unit_chain_length"], 3);
    assert_eq!(d["expected_chain_length"], 3);
    assert_eq!(d["images"]["T01"], "2 * T11");
    assert_eq!(d["images"]["T11"], "-1 * T02^2");
}

#[test]
fn search_lnd_on_ex2_and_ex1() {
    let v = json_of(&run(&["search-lnd", "--max-degree", "3"], "1,2;2;3"));
    assert!(v["nilpotent_count"].as_u64().unwrap() >= 1);
    let v = json_of(&run(&["search-lnd", "--max-degree", "4"], "2,3;2;3"));
    assert_eq!(v["nilpotent_count"], 0);
}

#[test]
fn report_ex1_matches_golden_file() {
    let golden = include_str!("golden/ex1_report.json");
    let first = run(&["report"], "2,3;2;3");
    assert!(first.status.success());
    assert_eq!(String::from_utf8(first.stdout).unwrap(), golden);
    let second = run(&["report", "--jobs", "1"], "2,3;2;3");
    assert_eq!(String::from_utf8(second.stdout).unwrap(), golden);
}

#[test]
fn report_on_non_factorial_has_null_sections() {
    let v = json_of(&run(&["report"], "2;2;3"));
    assert_eq!(v["grading"], Value::Null);
    assert_eq!(v["rigidity"]["scope"], "non-factorial");
}

#[test]
fn text_format() {
    let out = run(&["check", "--format", "text"], "2,3;2,3;5");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rigid: Rigid"));
    assert!(text.contains("cylinder: NoCylinder"));
}
