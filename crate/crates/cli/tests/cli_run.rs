use std::path::{Path, PathBuf};
use std::process::Command;

use corecalc_cli::codec;
use corecalc_cli::{cmd_fuzz, cmd_run, Exit, FuzzOptions, RunOptions};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn worked_examples() -> Vec<PathBuf> {
    let mut v: Vec<_> = std::fs::read_dir(fixture(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    v
}

fn run(path: &Path, opts: &RunOptions) -> (Exit, Value) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let exit = cmd_run(path, Some(&out), opts).unwrap();
    let report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    (exit, report)
}

fn without_timestamp(mut v: Value) -> String {
    v.as_object_mut().unwrap().remove("timestamp");
    serde_json::to_string(&v).unwrap()
}

/// Every polyhedron-valued field in a report, at any depth.
fn sets(v: &Value, out: &mut Vec<Value>) {
    match v {
        Value::Object(m) => {
            if m.get("kind").and_then(Value::as_str) == Some("polyhedron") {
                out.push(v.clone());
            }
            m.values().for_each(|x| sets(x, out));
        }
        Value::Array(a) => a.iter().for_each(|x| sets(x, out)),
        _ => {}
    }
}

#[test]
fn worked_examples_reproduce() {
    let files = worked_examples();
    assert!(files.len() >= 30);
    for f in files {
        let (exit, report) = run(&f, &RunOptions { oracle: true, ..Default::default() });
        assert_eq!(exit, Exit::Success, "{}: {report:#}", f.display());
        for q in report["queries"].as_array().unwrap() {
            assert_eq!(q["expect"]["ok"], Value::Bool(true), "{}", f.display());
        }
    }
}

#[test]
fn half_planes_report_equality() {
    let (exit, report) = run(&fixture("cli_half_planes.json"), &RunOptions::default());
    assert_eq!(exit, Exit::Success);
    assert_eq!(report["queries"][0]["equal"], Value::Bool(true));
    assert_eq!(report["exit_code"], 0);
}

#[test]
fn undefined_object_is_an_input_error() {
    let (exit, report) = run(&fixture("cases/undefined_object.json"), &RunOptions::default());
    assert_eq!(exit, Exit::InputError);
    assert!(report["error"].as_str().unwrap().contains("Omega3"));
}

#[test]
fn corrupted_rhs_is_a_violation() {
    let path = fixture("cases/corrupt_rhs.json");
    assert_eq!(run(&path, &RunOptions::default()).0, Exit::InputError);
    let hooked = RunOptions { test_hooks: true, ..Default::default() };
    let (exit, report) = run(&path, &hooked);
    assert_eq!(exit, Exit::Violation);
    assert_eq!(report["queries"][0]["qc_satisfied"], Value::Bool(true));
    assert_eq!(report["queries"][0]["equal"], Value::Bool(false));
}

#[test]
fn require_qc_exits_three() {
    let path = fixture("cases/qc_fails.json");
    assert_eq!(run(&path, &RunOptions::default()).0, Exit::Success);
    let strict = RunOptions { require_qc: true, ..Default::default() };
    assert_eq!(run(&path, &strict).0, Exit::QcUnsatisfied);
}

#[test]
fn reported_sets_round_trip() {
    let mut count = 0;
    for f in worked_examples() {
        let (_, report) = run(&f, &RunOptions::default());
        let mut found = Vec::new();
        sets(&report, &mut found);
        for s in found {
            let h = codec::polyhedron(&s, "h").unwrap();
            let mut v_only = s.clone();
            v_only.as_object_mut().unwrap().remove("ineqs");
            v_only.as_object_mut().unwrap().remove("eqs");
            let v = codec::polyhedron(&v_only, "v").unwrap();
            assert!(h.set_equal(&v).unwrap(), "{}: {s}", f.display());
            count += 1;
        }
    }
    assert!(count > 50);
}

#[test]
fn reports_are_deterministic_modulo_timestamp() {
    let opts = RunOptions { oracle: true, seed: 11, ..Default::default() };
    for f in worked_examples() {
        let a = without_timestamp(run(&f, &opts).1);
        let b = without_timestamp(run(&f, &opts).1);
        assert_eq!(a, b, "{}", f.display());
    }
}

#[test]
fn binary_runs_and_sets_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_corecalc");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = Command::new(bin)
        .args(["run", "--oracle", "-o"])
        .arg(&out)
        .arg(fixture("subdiff_subdifferential.json"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["queries"].as_array().unwrap().len(), 2);

    let status = Command::new(bin).arg("run").arg(fixture("cases/undefined_object.json")).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    let status = Command::new(bin)
        .args(["run", "--enable-test-hooks"])
        .arg(fixture("cases/corrupt_rhs.json"))
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
    let status = Command::new(bin).args(["run", "/nonexistent/problem.json"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
}

#[test]
fn binary_fuzz_prints_a_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_corecalc"))
        .args(["fuzz", "--dimension", "2", "--count", "6", "--seed", "3", "--out-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("equal-under-qc"));
    assert!(text.contains("intersection_rule"));
    let bad = Command::new(env!("CARGO_BIN_EXE_corecalc")).args(["fuzz", "--dimension", "5"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

fn assert_rules_hold(dimension: usize, count: usize, seed: u64) {
    let s = cmd_fuzz(&FuzzOptions::new(dimension, count, seed)).unwrap();
    assert_eq!(s.exit(), Exit::Success, "{}", s.table());
    for r in &s.rows {
        assert_eq!(r.instances, count);
        if r.rule {
            assert_eq!(r.equal_under_qc, r.qc_true, "{}", r.name);
            assert!(r.qc_true > 0, "{}", r.name);
        }
    }
}

#[test]
fn fuzz_dimension_two() {
    assert_rules_hold(2, 200, 42);
}

#[test]
fn fuzz_dimension_one() {
    assert_rules_hold(1, 50, 7);
}

#[test]
fn fuzz_without_instances() {
    let s = cmd_fuzz(&FuzzOptions::new(2, 0, 1)).unwrap();
    assert_eq!(s.exit(), Exit::Success);
    assert!(s.rows.is_empty());
}
