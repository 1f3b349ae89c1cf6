use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn zerosum(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_zerosum"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const WORKED: &str = r#"{"group":"Z","terms":[{"elem":[-3],"mult":1},{"elem":[2],"mult":2}]}"#;

#[test]
fn gen_cube_predicts_sigma() {
    let out = zerosum(&["gen", "--family", "cube", "--params", "s=1,n=10"], None);
    assert!(out.status.success());
    assert_eq!(json(&out)["predicted_sigma"], 20);
}

#[test]
fn gen_output_feeds_analyze() {
    let gen = zerosum(&["gen", "--family", "two-gen", "--params", "c=3,n=10"], None);
    let text = String::from_utf8(gen.stdout).unwrap();
    let out = zerosum(&["analyze", "-"], Some(&text));
    assert!(out.status.success());
    assert_eq!(json(&out)["sigma_size"], 27);
}

#[test]
fn analyze_worked_example() {
    let out = zerosum(&["analyze", "-", "--C", "2"], Some(WORKED));
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["sigma_size"], 6);
    assert_eq!(v["proper_size"], 5);
    assert_eq!(v["zero_sum_free"], true);
    assert_eq!(v["stats"]["n"], 3);
}

#[test]
fn stabilize_worked_chain() {
    let input = r#"{"group":"Z","terms":[{"elem":[1],"mult":2},{"elem":[2],"mult":3}]}"#;
    let out = zerosum(&["stabilize", "-"], Some(input));
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["steps"], 2);
    assert_eq!(v["final"]["n"], 7);
}

#[test]
fn verify_structure_exit_codes() {
    let gen = zerosum(&["gen", "--family", "cube", "--params", "s=1,n=1728"], None);
    let cube = String::from_utf8(gen.stdout).unwrap();
    let ok = zerosum(&["verify-structure", "-", "--C", "3"], Some(&cube));
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["certificate"]["h"], 1726);

    let gen = zerosum(&["gen", "--family", "two-gen", "--params", "c=2,n=512"], None);
    let two = String::from_utf8(gen.stdout).unwrap();
    let rejected = zerosum(&["verify-structure", "-", "--C", "2"], Some(&two));
    assert_eq!(rejected.status.code(), Some(1));
    assert!(json(&rejected)["certificate"].is_null());

    let dir = std::env::temp_dir().join(format!("zerosum-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"a":[1,0],"h":1726,"X":[[0,0]]}"#).unwrap();
    let tampered = zerosum(
        &["verify-structure", "-", "--C", "3", "--certificate", bad.to_str().unwrap()],
        Some(&cube),
    );
    assert_eq!(tampered.status.code(), Some(1));
    let garbage = dir.join("garbage.json");
    std::fs::write(&garbage, "{").unwrap();
    let malformed = zerosum(
        &["verify-structure", "-", "--C", "3", "--certificate", garbage.to_str().unwrap()],
        Some(&cube),
    );
    assert_eq!(malformed.status.code(), Some(1));
    assert_eq!(json(&malformed)["error"]["kind"], "validation");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_check_over_budget_is_a_resource_error() {
    let input = r#"{"group":"Z/1000","terms":[{"elem":[1],"mult":999},{"elem":[3],"mult":999},{"elem":[7],"mult":999}]}"#;
    let out = zerosum(&["oracle-check", "-"], Some(input));
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "resource");
}

#[test]
fn oracle_check_random_is_deterministic() {
    let a = zerosum(&["--seed", "9", "oracle-check", "--random", "50"], None);
    let b = zerosum(&["--seed", "9", "oracle-check", "--random", "50"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["agree"], true);
}

#[test]
fn davenport_command() {
    let out = zerosum(&["davenport", "--group", "Z/3 x Z/3"], None);
    assert!(out.status.success());
    assert_eq!(json(&out)["d"], 5);
    let out = zerosum(&["davenport", "--group", "Z"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_input_is_a_validation_error() {
    let out = zerosum(&["analyze", "-"], Some(r#"{"group":"Z/0","terms":[]}"#));
    assert_eq!(out.status.code(), Some(1));
    let out = zerosum(&["gen", "--family", "cube", "--params", "s=1"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn text_format() {
    let out = zerosum(&["--format", "text", "analyze", "-"], Some(WORKED));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("sigma_size"));
    assert!(text.contains("sf1 pass"));
}
