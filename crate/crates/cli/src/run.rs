//! `run`: execute a problem file and write a JSON report.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::expect;
use crate::ops::{echo_object, enc_oracle, execute, ExecOptions};
use crate::problem::{ProblemFile, Query, Workspace, VERSION};

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    QcUnsatisfied = 3,
    Violation = 1,
    InputError = 2,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }

    /// Input errors dominate violations, which dominate unmet QCs.
    fn rank(self) -> u8 {
        match self {
            Exit::Success => 0,
            Exit::QcUnsatisfied => 1,
            Exit::Violation => 2,
            Exit::InputError => 3,
        }
    }

    fn worst(self, other: Exit) -> Exit {
        if other.rank() > self.rank() {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub oracle: bool,
    pub require_qc: bool,
    pub seed: u64,
    pub test_hooks: bool,
}

pub struct RunOutput {
    pub report: Value,
    pub exit: Exit,
}

#[derive(Default)]
struct Tally {
    errors: usize,
    violations: usize,
    qc_unsatisfied: usize,
    expect_failures: usize,
    oracle_disagreements: usize,
}

fn echo_inputs(ws: &Workspace, q: &Query) -> Value {
    let objects: Map<String, Value> = q
        .args
        .iter()
        .filter_map(|a| ws.objects.get(a).map(|o| (a.clone(), echo_object(o))))
        .collect();
    let params: BTreeMap<&String, &Value> = q.params.iter().collect();
    json!({"objects": objects, "params": params})
}

fn run_query(ws: &Workspace, index: usize, q: &Query, opts: &RunOptions, tally: &mut Tally) -> (Value, Exit) {
    let mut entry = Map::new();
    entry.insert("index".into(), json!(index));
    entry.insert("op".into(), json!(q.op));
    entry.insert("args".into(), json!(q.args));
    entry.insert("inputs".into(), echo_inputs(ws, q));
    let exec = ExecOptions {
        oracle: opts.oracle,
        seed: opts.seed,
        test_hooks: opts.test_hooks,
    };
    let outcome = match execute(ws, q, &exec) {
        Ok(o) => o,
        Err(e) => {
            tally.errors += 1;
            entry.insert("status".into(), json!("error"));
            entry.insert("error".into(), json!(e.to_string()));
            return (Value::Object(entry), Exit::InputError);
        }
    };
    let mut exit = Exit::Success;
    let mut notes = Vec::new();
    if let Some(r) = &outcome.rule {
        entry.insert("qc_satisfied".into(), json!(r.qc_satisfied));
        entry.insert("equal".into(), json!(r.equal));
        if !r.rhs_subset_lhs {
            notes.push("right side is not contained in the left side");
        }
        if r.qc_satisfied && !r.equal {
            notes.push("qualification condition holds but the sides differ");
        }
        if !notes.is_empty() {
            tally.violations += 1;
            exit = Exit::Violation;
        } else if !r.qc_satisfied && opts.require_qc {
            tally.qc_unsatisfied += 1;
            exit = Exit::QcUnsatisfied;
        }
    }
    entry.insert("result".into(), outcome.result.clone());
    if let Some(o) = &outcome.oracle {
        let mut v = enc_oracle(&o.report);
        v["agrees"] = json!(o.agrees);
        entry.insert("oracle".into(), v);
        if !o.agrees {
            tally.oracle_disagreements += 1;
            notes.push("oracle disagrees with the engine");
            exit = exit.worst(Exit::Violation);
        }
    }
    if let Some(e) = &q.expect {
        match expect::mismatch(e, &outcome.result) {
            Ok(None) => {
                entry.insert("expect".into(), json!({"ok": true}));
            }
            Ok(Some(path)) => {
                tally.expect_failures += 1;
                entry.insert("expect".into(), json!({"ok": false, "mismatch": path}));
                notes.push("result differs from the expectation");
                exit = exit.worst(Exit::Violation);
            }
            Err(err) => {
                tally.errors += 1;
                entry.insert("expect".into(), json!({"ok": false, "error": err.to_string()}));
                exit = exit.worst(Exit::InputError);
            }
        }
    }
    let status = match exit {
        Exit::Success => "ok",
        Exit::QcUnsatisfied => "qc_unsatisfied",
        Exit::Violation => "violation",
        Exit::InputError => "error",
    };
    entry.insert("status".into(), json!(status));
    if !notes.is_empty() {
        entry.insert("notes".into(), json!(notes));
    }
    (Value::Object(entry), exit)
}

fn timestamp() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn header(opts: &RunOptions) -> Map<String, Value> {
    let mut r = Map::new();
    r.insert("version".into(), json!(VERSION));
    r.insert("tool".into(), json!(concat!("corecalc ", env!("CARGO_PKG_VERSION"))));
    r.insert("timestamp".into(), json!(timestamp()));
    r.insert(
        "flags".into(),
        json!({"oracle": opts.oracle, "require_qc": opts.require_qc, "seed": opts.seed}),
    );
    r
}

fn failed(opts: &RunOptions, err: &CliError) -> RunOutput {
    let mut r = header(opts);
    r.insert("error".into(), json!(err.to_string()));
    r.insert("exit_code".into(), json!(Exit::InputError.code()));
    RunOutput {
        report: Value::Object(r),
        exit: Exit::InputError,
    }
}

/// Executes every query in order. Failures inside one query are recorded
/// and do not stop the rest.
pub fn run_problem(problem: &ProblemFile, opts: &RunOptions) -> RunOutput {
    let ws = match problem.workspace() {
        Ok(ws) => ws,
        Err(e) => return failed(opts, &e),
    };
    let mut tally = Tally::default();
    let mut exit = Exit::Success;
    let mut entries = Vec::new();
    for (i, q) in problem.queries.iter().enumerate() {
        let (entry, e) = run_query(&ws, i, q, opts, &mut tally);
        entries.push(entry);
        exit = exit.worst(e);
    }
    let mut r = header(opts);
    r.insert("queries".into(), Value::Array(entries));
    r.insert(
        "summary".into(),
        json!({
            "queries": problem.queries.len(),
            "errors": tally.errors,
            "violations": tally.violations,
            "qc_unsatisfied": tally.qc_unsatisfied,
            "expect_failures": tally.expect_failures,
            "oracle_disagreements": tally.oracle_disagreements,
        }),
    );
    r.insert("exit_code".into(), json!(exit.code()));
    RunOutput {
        report: Value::Object(r),
        exit,
    }
}

pub fn run_text(text: &str, opts: &RunOptions) -> RunOutput {
    match ProblemFile::parse(text) {
        Ok(p) => run_problem(&p, opts),
        Err(e) => failed(opts, &e),
    }
}

/// Runs `input` and writes the report to `output` (stdout when absent).
pub fn cmd_run(input: &Path, output: Option<&Path>, opts: &RunOptions) -> Result<Exit, CliError> {
    let out = match std::fs::read_to_string(input) {
        Ok(text) => run_text(&text, opts),
        Err(e) => failed(opts, &CliError::Input(format!("cannot read {}: {e}", input.display()))),
    };
    let mut text = serde_json::to_string_pretty(&out.report)?;
    text.push('\n');
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(out.exit)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HALF_PLANES: &str = r#"{
      "version": "1",
      "objects": {
        "Om1": {"kind": "polyhedron", "dim": 2, "ineqs": [{"a": ["1", "0"], "b": "0"}]},
        "Om2": {"kind": "polyhedron", "dim": 2, "ineqs": [{"a": ["0", "1"], "b": "0"}]}
      },
      "queries": [{"op": "intersection_rule", "args": ["Om1", "Om2"], "point": ["0", "0"]}]
    }"#;

    fn strip_time(mut v: Value) -> Value {
        v.as_object_mut().unwrap().remove("timestamp");
        v
    }

    #[test]
    fn precedence() {
        assert_eq!(Exit::Violation.worst(Exit::QcUnsatisfied), Exit::Violation);
        assert_eq!(Exit::QcUnsatisfied.worst(Exit::InputError), Exit::InputError);
        assert_eq!(Exit::Success.worst(Exit::QcUnsatisfied), Exit::QcUnsatisfied);
    }

    #[test]
    fn rule_query_reports_flags() {
        let out = run_text(HALF_PLANES, &RunOptions::default());
        assert_eq!(out.exit, Exit::Success);
        let q = &out.report["queries"][0];
        assert_eq!(q["equal"], json!(true));
        assert_eq!(q["qc_satisfied"], json!(true));
        assert!(q["result"]["lhs"]["vertices"].is_array());
        assert!(q["result"]["lhs"]["ineqs"].is_array());
    }

    #[test]
    fn reports_are_deterministic() {
        let opts = RunOptions { oracle: true, seed: 9, ..Default::default() };
        let a = strip_time(run_text(HALF_PLANES, &opts).report);
        let b = strip_time(run_text(HALF_PLANES, &opts).report);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn hook_needs_permission() {
        let text = HALF_PLANES.replace(
            r#""point": ["0", "0"]}"#,
            r#""point": ["0", "0"], "test_replace_rhs": {"dim": 2, "vertices": [["0", "0"]]}}"#,
        );
        assert_eq!(run_text(&text, &RunOptions::default()).exit, Exit::InputError);
        let hooked = RunOptions { test_hooks: true, ..Default::default() };
        assert_eq!(run_text(&text, &hooked).exit, Exit::Violation);
    }

    #[test]
    fn bad_json_is_an_input_error() {
        let out = run_text("{not json", &RunOptions::default());
        assert_eq!(out.exit, Exit::InputError);
        assert!(out.report["error"].is_string());
    }
}
