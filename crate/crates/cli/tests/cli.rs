use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macaulay"))
        .args(args)
        .output()
        .unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn check_poset_exit_codes() {
    assert_eq!(code(&["check-poset", "--poset", "multiset:2,2,2", "--order", "lex"]), 0);
    assert_eq!(code(&["check-poset", "--poset", "builtin:diamond:2", "--order", "family-default"]), 0);
    let out = run(&["check-poset", "--poset", "multiset:4,3", "--order", "lex"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("witness {(3,0)}"), "{text}");
}

#[test]
fn usage_and_resource_errors() {
    assert_eq!(code(&["check-poset", "--poset", "nope:1"]), 2);
    assert_eq!(code(&["check-poset", "--poset", "star:3", "--order", "dom:1,1"]), 2);
    assert_eq!(code(&["check-poset"]), 2);
    assert_eq!(code(&["check-poset", "--poset", "kk:7", "--order", "lex"]), 3);
    assert_eq!(code(&["search-order", "--poset", "multiset:3,3,3", "--budget", "1"]), 3);
    assert_eq!(code(&["ring-info", "--ring", "star:3"]), 2);
}

#[test]
fn check_ring_modes() {
    let out = stdout(&["check-ring", "--ring", "cl:3,4", "--order", "lex", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["outcome"]["modes_agree"], true);
    // the non-LLI ring breaks the correspondence hypotheses
    let out = run(&["check-ring", "--ring", "example:hilb-not-equal", "--order", "lex"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8(out.stdout).unwrap().contains("degree 2"));
    // the mixed order is reported as not a monomial order
    let out = run(&["check-ring", "--ring", "example:imi-strict", "--order", "mixed", "--mode", "monomial-ideals"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("is a monomial order: no"));
}

#[test]
fn hilbert_examples() {
    let out = run(&["hilbert", "--ring", "example:imi-strict", "--order", "example"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("Hilb_IMI [0, 1, 3]"));
    assert_eq!(code(&["hilbert", "--ring", "cl:3,4", "--random", "5", "--seed", "7"]), 0);
}

#[test]
fn export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["multiset:2,2", "star:3", "diamond:1"] {
        let json = stdout(&["export", "--poset", name, "--format", "json"]);
        let path = dir.path().join("p.json");
        std::fs::write(&path, &json).unwrap();
        let again = stdout(&["export", "--poset", path.to_str().unwrap(), "--format", "json"]);
        assert_eq!(json, again, "{name}");
        let dot = stdout(&["export", "--poset", name, "--format", "dot"]);
        assert!(dot.starts_with("digraph poset {"));
    }
    let cube = stdout(&["export", "--poset", "multiset:2,2", "--format", "cube", "--order", "lex"]);
    assert_eq!(cube.lines().count(), 5);
    let order = stdout(&["export", "--poset", "star:3", "--format", "order", "--order", "lex"]);
    assert_eq!(order.lines().count(), 4);
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for sub in ["a", "b"] {
        let out = dir.path().join(sub);
        let status = run(&[
            "hilbert", "--ring", "colored:2,2", "--random", "4", "--seed", "5", "--out",
            out.to_str().unwrap(),
        ]);
        assert!(status.status.success());
        let text = std::fs::read_to_string(out.join("report.json")).unwrap();
        let mut v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
        v["elapsed_ms"] = Value::Null;
        reports.push(v);
    }
    assert_eq!(reports[0], reports[1]);
}
