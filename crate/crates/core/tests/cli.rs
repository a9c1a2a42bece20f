//! End-to-end tests of the `workbench` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn workbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench")).args(args).env("WORKBENCH_THREADS", "2").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.to_str().unwrap().to_owned()
}

fn d4(expected: Value) -> Value {
    json!({
        "algebra": { "family": "downup", "params": { "alpha": 0, "beta": 1 } },
        "group": { "kind": "dihedral", "n": 2 },
        "grading": { "d": "a", "u": "b" },
        "truncation": 8,
        "tasks": ["validate", "hilbert"],
        "expected": expected,
    })
}

#[test]
fn examples_lists_the_catalog() {
    let o = workbench(&["examples"]);
    assert_eq!(code(&o), 0);
    let names: Vec<String> = stdout(&o).lines().map(|l| l.split_whitespace().next().unwrap().to_owned()).collect();
    assert!(names.len() >= 13);
    for n in ["example-3.1-n2", "example-3.2", "lemma-2.16-F-D6", "case1-D4", "B-lemma-2.7"] {
        assert!(names.iter().any(|m| m == n), "{n} missing");
    }
}

#[test]
fn run_emits_a_json_report() {
    let o = workbench(&["run", "example-3.1-n2", "--maxdeg", "8"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.is_object());
}

#[test]
fn json_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("r{k}.json"));
        let o = workbench(&["run", "lemma-2.11-case6", "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        outputs.push(std::fs::read(out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn catalog_regressions_pass() {
    for name in ["example-3.1-n2", "example-3.2", "lemma-2.11-case1", "lemma-2.16-F-D6", "B-lemma-2.7"] {
        let o = workbench(&["regress", name]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
        assert!(stdout(&o).contains("regression passed"));
    }
}

#[test]
fn empty_expected_block_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "empty.json", &d4(json!({})));
    assert_eq!(code(&workbench(&["regress", &path])), 0);
}

#[test]
fn regression_reports_first_mismatching_degree() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "probe.json", &d4(json!({})));
    let report: Value = serde_json::from_str(&stdout(&workbench(&["run", &good]))).unwrap();
    let dims: Vec<u64> = report["tasks"]["hilbert"]["values"]
        .as_array()
        .expect("hilbert values")
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();

    let mut off = dims.clone();
    off[5] += 1;
    let bad = write(dir.path(), "bad.json", &d4(json!({ "hilbert": off })));
    let o = workbench(&["regress", &bad]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("degree 5"), "{}", stdout(&o));

    let exact = write(dir.path(), "exact.json", &d4(json!({ "hilbert": dims, "valid": true })));
    assert_eq!(code(&workbench(&["regress", &exact])), 0);
}

#[test]
fn beta_zero_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = d4(json!({}));
    cfg["algebra"]["params"]["beta"] = json!(0);
    let path = write(dir.path(), "beta0.json", &cfg);
    let o = workbench(&["run", &path]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("beta != 0"));
}

#[test]
fn malformed_configs_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let mut unknown = d4(json!({}));
    unknown["colour"] = json!("blue");
    let mut no_tasks = d4(json!({}));
    no_tasks["tasks"] = json!([]);
    let mut tiny = d4(json!({}));
    tiny["truncation"] = json!(2);
    let mut bad_group = d4(json!({}));
    bad_group["grading"]["d"] = json!("zz");
    for (name, cfg) in [("unknown", unknown), ("no_tasks", no_tasks), ("tiny", tiny), ("bad_group", bad_group)] {
        let path = write(dir.path(), &format!("{name}.json"), &cfg);
        assert_eq!(code(&workbench(&["run", &path])), 1, "{name}");
    }
    assert_eq!(code(&workbench(&["run", "no-such-example-or-file"])), 1);
}
