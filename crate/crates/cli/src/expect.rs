//! Matching a query result against a pinned expectation.
//!
//! Sets and cones compare by `set_equal`, rationals by value, and objects
//! key by key over the keys the expectation names. A vector can also be
//! pinned up to positive scaling with `{"positive_multiple_of": [...]}`.

use corecalc::rational::{int, parse_rational};
use corecalc::Polyhedron;
use serde_json::Value;

use crate::codec;
use crate::error::CliResult;

fn as_set(v: &Value) -> CliResult<Option<Polyhedron>> {
    Ok(match v.get("kind").and_then(Value::as_str) {
        Some("polyhedron") => Some(codec::polyhedron(v, "expect")?),
        Some("cone") => Some(codec::cone(v, "expect")?.to_polyhedron()),
        Some("function") | Some("setvaluedmap") => {
            let inner = v.get("epi").or_else(|| v.get("graph"));
            match inner {
                Some(p) => Some(codec::polyhedron(p, "expect")?),
                None => Some(codec::function(v, "expect")?.epi().clone()),
            }
        }
        _ => None,
    })
}

fn same_rational(a: &str, b: &str) -> bool {
    match (parse_rational(a), parse_rational(b)) {
        (Ok(x), Ok(y)) => x == y,
        _ => a == b,
    }
}

fn positive_multiple(actual: &Value, dir: &Value) -> CliResult<bool> {
    let (Ok(a), Ok(d)) = (codec::vector(actual, "actual"), codec::vector(dir, "expect")) else {
        return Ok(false);
    };
    if a.len() != d.len() {
        return Ok(false);
    }
    let Some(i) = d.iter().position(|c| *c != int(0)) else {
        return Ok(false);
    };
    let t = &a[i] / &d[i];
    Ok(t > int(0) && a.iter().zip(&d).all(|(x, y)| *x == &t * y))
}

/// Returns the JSON path of the first mismatch, or `None` on a match.
pub fn mismatch(expected: &Value, actual: &Value) -> CliResult<Option<String>> {
    walk(expected, actual, "result")
}

fn walk(expected: &Value, actual: &Value, path: &str) -> CliResult<Option<String>> {
    let miss = || Ok(Some(path.to_string()));
    if let Some(dir) = expected.get("positive_multiple_of") {
        return if positive_multiple(actual, dir)? { Ok(None) } else { miss() };
    }
    if let Some(e) = as_set(expected)? {
        return match as_set(actual) {
            Ok(Some(a)) if a.dim() == e.dim() && a.set_equal(&e)? => Ok(None),
            _ => miss(),
        };
    }
    match (expected, actual) {
        (Value::String(e), Value::String(a)) => {
            if same_rational(e, a) {
                Ok(None)
            } else {
                miss()
            }
        }
        (Value::Array(e), Value::Array(a)) => {
            if e.len() != a.len() {
                return miss();
            }
            for (i, (x, y)) in e.iter().zip(a).enumerate() {
                if let Some(p) = walk(x, y, &format!("{path}[{i}]"))? {
                    return Ok(Some(p));
                }
            }
            Ok(None)
        }
        (Value::Object(e), Value::Object(a)) => {
            for (k, x) in e {
                let Some(y) = a.get(k) else { return Ok(Some(format!("{path}.{k}"))) };
                if let Some(p) = walk(x, y, &format!("{path}.{k}"))? {
                    return Ok(Some(p));
                }
            }
            Ok(None)
        }
        (e, a) if e == a => Ok(None),
        _ => miss(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn sets_compare_by_content() {
        let e = json!({"kind": "polyhedron", "dim": 1, "vertices": [["-1"], ["1"]]});
        let a = json!({"kind": "polyhedron", "dim": 1, "ineqs": [{"a": ["2"], "b": "2"}, {"a": ["-1"], "b": "1"}]});
        assert_eq!(mismatch(&e, &a).unwrap(), None);
        let b = json!({"kind": "polyhedron", "dim": 1, "vertices": [["0"], ["1"]]});
        assert_eq!(mismatch(&e, &b).unwrap(), Some("result".into()));
    }

    #[test]
    fn objects_match_on_named_keys() {
        let a = json!({"equal": true, "qc_satisfied": false, "lhs": null});
        assert_eq!(mismatch(&json!({"equal": true}), &a).unwrap(), None);
        assert_eq!(mismatch(&json!({"qc_satisfied": true}), &a).unwrap(), Some("result.qc_satisfied".into()));
        assert_eq!(mismatch(&json!({"missing": 1}), &a).unwrap(), Some("result.missing".into()));
    }

    #[test]
    fn rationals_and_directions() {
        assert_eq!(mismatch(&json!(["1/2", "2"]), &json!(["2/4", "2"])).unwrap(), None);
        let dir = json!({"positive_multiple_of": ["0", "1"]});
        assert_eq!(mismatch(&dir, &json!(["0", "3"])).unwrap(), None);
        assert!(mismatch(&dir, &json!(["0", "-3"])).unwrap().is_some());
        assert!(mismatch(&dir, &json!(null)).unwrap().is_some());
    }
}
