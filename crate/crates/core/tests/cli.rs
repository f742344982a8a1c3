use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const TRAP: &str = r#"{
  "n": 2,
  "goods": [
    {"id": "g1", "values": ["6/25", "6/25"]},
    {"id": "g2", "values": ["0.01", "0.01"]},
    {"id": "g3", "values": ["3/16", "3/16"]},
    {"id": "g4", "values": ["3/16", "3/16"]},
    {"id": "g5", "values": ["3/16", "3/16"]},
    {"id": "g6", "values": ["3/16", "3/16"]}
  ]
}"#;

const SKEWED: &str = r#"{
  "n": 2,
  "goods": [
    {"id": "a", "values": ["1", "2"]},
    {"id": "b", "values": ["3", "1"]}
  ]
}"#;

const THREE: &str = r#"{
  "n": 3,
  "goods": [
    {"id": "x", "values": ["1", "1", "1"]},
    {"id": "y", "values": ["2", "1", "1/2"]}
  ]
}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_online-fair"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn trap_run_and_verify() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "inst.json", TRAP);
    let report = dir.path().join("report.json");
    let o = run(&["run", "--algo", "norm", "--instance", s(&inst), "--out", s(&report)]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let text = std::fs::read_to_string(&report).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    let prop1 = json["factors"]["prop1"].as_str().unwrap();
    let factor: online_fair::ExtendedFactor = serde_json::from_value(json["factors"]["prop1"].clone()).unwrap();
    assert!(factor.satisfied(), "{prop1}");
    let ef1: online_fair::ExtendedFactor = serde_json::from_value(json["factors"]["ef1"].clone()).unwrap();
    assert!(ef1.satisfied());

    // The report itself is an allocation file.
    let v = run(&["verify", "--instance", s(&inst), "--allocation", s(&report)]);
    assert_eq!(v.status.code(), Some(0));
    let out = stdout(&v);
    assert!(out.contains(&format!("prop1: {prop1}")), "{out}");

    let bad = write(
        &dir,
        "bad.json",
        r#"{"allocation": {"g1": 1, "g2": 1, "g3": 2, "g4": 2, "g5": 2, "g6": 2}}"#,
    );
    let v = run(&["verify", "--instance", s(&inst), "--allocation", s(&bad)]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).contains("prop1: 7/8"), "{}", stdout(&v));
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "inst.json", TRAP);
    for algo in ["norm", "freq-rr", "freq-leximin", "freq-bruteforce", "threshold", "greedy", "dump", "round-robin"] {
        let a = run(&["run", "--algo", algo, "--instance", s(&inst)]);
        let b = run(&["run", "--algo", algo, "--instance", s(&inst)]);
        assert_eq!(a.status.code(), Some(0), "{algo}: {a:?}");
        assert_eq!(a.stdout, b.stdout, "{algo}");
    }
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let skewed = write(&dir, "skewed.json", SKEWED);
    let three = write(&dir, "three.json", THREE);
    assert_eq!(run(&["run", "--algo", "threshold", "--instance", s(&skewed)]).status.code(), Some(2));
    assert_eq!(run(&["run", "--algo", "freq-leximin", "--instance", s(&three)]).status.code(), Some(2));

    let garbage = write(&dir, "garbage.json", "{ not json");
    assert_eq!(run(&["run", "--algo", "norm", "--instance", s(&garbage)]).status.code(), Some(3));
    let bad_value = write(&dir, "neg.json", r#"{"n": 1, "goods": [{"id": "a", "values": ["-1"]}]}"#);
    assert_eq!(run(&["mms", "--instance", s(&bad_value)]).status.code(), Some(3));
    let missing = dir.path().join("nope.json");
    assert_eq!(run(&["mms", "--instance", s(&missing)]).status.code(), Some(3));
    assert_eq!(run(&["run", "--algo", "magic", "--instance", s(&skewed)]).status.code(), Some(3));

    let partial = write(&dir, "partial.json", r#"{"allocation": {"a": 1}}"#);
    let o = run(&["verify", "--instance", s(&skewed), "--allocation", s(&partial)]);
    assert_eq!(o.status.code(), Some(4));
    assert!(!o.stderr.is_empty());
}

#[test]
fn explicit_advice_is_respected() {
    let dir = TempDir::new().unwrap();
    let none = write(
        &dir,
        "none.json",
        r#"{"n": 2, "goods": [{"id": "a", "values": ["1", "1"]}], "advice": {"kind": "none"}}"#,
    );
    assert_eq!(run(&["run", "--algo", "norm", "--instance", s(&none)]).status.code(), Some(2));
    assert_eq!(run(&["run", "--algo", "dump", "--instance", s(&none)]).status.code(), Some(0));

    let wrong = write(
        &dir,
        "wrong.json",
        r#"{"n": 2, "goods": [{"id": "a", "values": ["1", "1"]}], "advice": {"kind": "totals", "totals": ["2", "1"]}}"#,
    );
    let o = run(&["run", "--algo", "norm", "--instance", s(&wrong)]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(json["advice_violation"].is_string());
}

#[test]
fn mms_command() {
    let dir = TempDir::new().unwrap();
    let inst = write(
        &dir,
        "mms.json",
        r#"{"n": 3, "goods": [
            {"id": "a", "values": ["16", "1", "1"]},
            {"id": "b", "values": ["16", "1", "1"]},
            {"id": "c", "values": ["16", "1", "1"]},
            {"id": "d", "values": ["4", "1", "1"]},
            {"id": "e", "values": ["1/16", "1", "1"]},
            {"id": "f", "values": ["1/16", "1", "1"]}
        ]}"#,
    );
    let o = run(&["mms", "--instance", s(&inst)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "agent 1: 257/16\nagent 2: 2\nagent 3: 2\n");
    let o = run(&["verify", "--instance", s(&inst), "--allocation", s(&write(
        &dir,
        "all.json",
        r#"{"allocation": {"a": 1, "b": 1, "c": 1, "d": 2, "e": 3, "f": 3}}"#,
    )), "--max-goods", "3"]);
    assert!(stdout(&o).contains("mms: skipped(budget)"), "{}", stdout(&o));
}

#[test]
fn adversary_command_writes_transcript() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("adv.json");
    let o = run(&["adversary", "--adv", "a6", "--algo", "norm", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    assert!(stdout(&o).contains("ceiling: 1/49"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["bound"]["holds"], serde_json::Value::Bool(true));
    assert!(!json["transcript"].as_array().unwrap().is_empty());
}

#[test]
fn noisy_runs() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "skewed.json", SKEWED);
    let iv = write(&dir, "iv.json", r#"{"intervals": [["2", "6"], ["3", "3"]]}"#);
    let o = run(&["run", "--algo", "norm", "--instance", s(&inst), "--noisy-intervals", s(&iv)]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["noisy_norm"]["kappa"][0], "1/3");

    let bad = write(&dir, "bad.json", r#"{"intervals": [["5", "6"], ["3", "3"]]}"#);
    let o = run(&["run", "--algo", "norm", "--instance", s(&inst), "--noisy-intervals", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));

    let pred = write(&dir, "pred.json", r#"{"multisets": [["1", "3"], ["2", "2"]]}"#);
    let o = run(&["run", "--algo", "freq-rr", "--instance", s(&inst), "--noisy-freq", s(&pred)]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["noisy_freq"]["eta"][1], "1");
    assert_eq!(run(&["run", "--algo", "norm", "--instance", s(&inst), "--noisy-freq", s(&pred)]).status.code(), Some(2));
}

#[test]
fn fuzz_is_clean() {
    let o = run(&["fuzz", "--seed", "5", "--count", "40"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
