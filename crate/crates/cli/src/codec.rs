//! JSON encoding of rationals, sets, cones, maps and functions.
//!
//! Every rational travels as a string (`"3"`, `"-2/5"`). Sets are written
//! with both representations; on input the H-representation wins when both
//! are present.

use corecalc::normalcalc::PolyCone;
use corecalc::polyhedra::{HRep, VRep};
use corecalc::rational::{format_rational, parse_rational};
use corecalc::{Extended, LinearMap, Point, PolyFunction, Polyhedron, Rational, SetValuedMap};
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};

fn bad(what: impl Into<String>) -> CliError {
    CliError::Input(what.into())
}

pub fn rational(v: &Value, ctx: &str) -> CliResult<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| bad(format!("{ctx}: {e}"))),
        other => Err(bad(format!("{ctx}: rationals must be strings, found {other}"))),
    }
}

pub fn vector(v: &Value, ctx: &str) -> CliResult<Point> {
    let items = v
        .as_array()
        .ok_or_else(|| bad(format!("{ctx}: expected an array of rationals")))?;
    items
        .iter()
        .enumerate()
        .map(|(i, x)| rational(x, &format!("{ctx}[{i}]")))
        .collect()
}

fn vectors(v: Option<&Value>, dim: usize, ctx: &str) -> CliResult<Vec<Point>> {
    let Some(v) = v else { return Ok(Vec::new()) };
    let items = v
        .as_array()
        .ok_or_else(|| bad(format!("{ctx}: expected an array of vectors")))?;
    items
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let p = vector(p, &format!("{ctx}[{i}]"))?;
            expect_len(&p, dim, &format!("{ctx}[{i}]"))?;
            Ok(p)
        })
        .collect()
}

pub fn expect_len(p: &[Rational], dim: usize, ctx: &str) -> CliResult<()> {
    if p.len() == dim {
        Ok(())
    } else {
        Err(bad(format!("{ctx}: expected {dim} entries, found {}", p.len())))
    }
}

pub fn count(obj: &Map<String, Value>, key: &str, ctx: &str) -> CliResult<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|d| d as usize)
        .ok_or_else(|| bad(format!("{ctx}: missing or invalid \"{key}\"")))
}

fn rows(v: Option<&Value>, dim: usize, ctx: &str) -> CliResult<Vec<(Point, Rational)>> {
    let Some(v) = v else { return Ok(Vec::new()) };
    let items = v
        .as_array()
        .ok_or_else(|| bad(format!("{ctx}: expected an array of rows")))?;
    items
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let c = format!("{ctx}[{i}]");
            let a = vector(row.get("a").ok_or_else(|| bad(format!("{c}: missing \"a\"")))?, &c)?;
            expect_len(&a, dim, &c)?;
            let b = rational(row.get("b").ok_or_else(|| bad(format!("{c}: missing \"b\"")))?, &c)?;
            Ok((a, b))
        })
        .collect()
}

fn as_object<'a>(v: &'a Value, ctx: &str) -> CliResult<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(format!("{ctx}: expected an object")))
}

fn check_kind(obj: &Map<String, Value>, kind: &str, ctx: &str) -> CliResult<()> {
    match obj.get("kind").and_then(Value::as_str) {
        None => Ok(()),
        Some(k) if k == kind => Ok(()),
        Some(k) => Err(bad(format!("{ctx}: expected a {kind}, found a {k}"))),
    }
}

/// A polyhedron in H-form (`ineqs`/`eqs`) or V-form (`vertices`/`rays`).
pub fn polyhedron(v: &Value, ctx: &str) -> CliResult<Polyhedron> {
    let obj = as_object(v, ctx)?;
    check_kind(obj, "polyhedron", ctx)?;
    let dim = count(obj, "dim", ctx)?;
    let h_form = obj.contains_key("ineqs") || obj.contains_key("eqs");
    let v_form = obj.contains_key("vertices") || obj.contains_key("rays");
    if h_form || !v_form {
        let ineqs = rows(obj.get("ineqs"), dim, &format!("{ctx}.ineqs"))?;
        let eqs = rows(obj.get("eqs"), dim, &format!("{ctx}.eqs"))?;
        Ok(Polyhedron::new(dim, ineqs, eqs)?)
    } else {
        let vertices = vectors(obj.get("vertices"), dim, &format!("{ctx}.vertices"))?;
        let rays = vectors(obj.get("rays"), dim, &format!("{ctx}.rays"))?;
        if vertices.is_empty() && !rays.is_empty() {
            return Err(bad(format!("{ctx}: rays without a vertex")));
        }
        Ok(Polyhedron::from_generators(dim, vertices, rays)?)
    }
}

pub fn cone(v: &Value, ctx: &str) -> CliResult<PolyCone> {
    let obj = as_object(v, ctx)?;
    check_kind(obj, "cone", ctx)?;
    let dim = count(obj, "dim", ctx)?;
    let generators = vectors(obj.get("generators"), dim, &format!("{ctx}.generators"))?;
    let lineality = vectors(obj.get("lineality"), dim, &format!("{ctx}.lineality"))?;
    Ok(PolyCone::new(dim, generators, lineality)?)
}

/// A function given by its epigraph, as `max` of affine pieces over an
/// optional domain, or as the indicator of a set.
pub fn function(v: &Value, ctx: &str) -> CliResult<PolyFunction> {
    let obj = as_object(v, ctx)?;
    check_kind(obj, "function", ctx)?;
    if let Some(epi) = obj.get("epi") {
        let dim = count(obj, "dim", ctx)?;
        return Ok(PolyFunction::new(dim, polyhedron(epi, &format!("{ctx}.epi"))?)?);
    }
    if let Some(set) = obj.get("indicator") {
        return Ok(corecalc::subdiff::indicator(&polyhedron(set, &format!("{ctx}.indicator"))?)?);
    }
    let dim = count(obj, "dim", ctx)?;
    let pieces = obj
        .get("pieces")
        .and_then(Value::as_array)
        .ok_or_else(|| bad(format!("{ctx}: a function needs \"epi\", \"pieces\" or \"indicator\"")))?;
    let pieces = pieces
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let c = format!("{ctx}.pieces[{i}]");
            let s = vector(p.get("slope").ok_or_else(|| bad(format!("{c}: missing \"slope\"")))?, &c)?;
            expect_len(&s, dim, &c)?;
            let o = rational(p.get("offset").ok_or_else(|| bad(format!("{c}: missing \"offset\"")))?, &c)?;
            Ok((s, o))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let domain = obj
        .get("domain")
        .map(|d| polyhedron(d, &format!("{ctx}.domain")))
        .transpose()?;
    Ok(PolyFunction::max_affine(dim, &pieces, domain.as_ref())?)
}

pub fn map(v: &Value, ctx: &str) -> CliResult<SetValuedMap> {
    let obj = as_object(v, ctx)?;
    check_kind(obj, "setvaluedmap", ctx)?;
    let n = count(obj, "dim_in", ctx)?;
    let m = count(obj, "dim_out", ctx)?;
    let graph = obj
        .get("graph")
        .ok_or_else(|| bad(format!("{ctx}: missing \"graph\"")))?;
    Ok(SetValuedMap::new(n, m, polyhedron(graph, &format!("{ctx}.graph"))?)?)
}

pub fn linear_map(v: &Value, ctx: &str) -> CliResult<LinearMap> {
    let obj = as_object(v, ctx)?;
    check_kind(obj, "linearmap", ctx)?;
    let rows = count(obj, "rows", ctx)?;
    let cols = count(obj, "cols", ctx)?;
    let entries = vectors(obj.get("entries"), cols, &format!("{ctx}.entries"))?;
    Ok(LinearMap::new(rows, cols, entries)?)
}

pub fn enc_rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn enc_vector(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(enc_rational).collect())
}

pub fn enc_vectors(ps: &[Point]) -> Value {
    Value::Array(ps.iter().map(|p| enc_vector(p)).collect())
}

pub fn enc_extended(e: &Extended) -> Value {
    Value::String(e.to_string())
}

fn enc_rows(rows: &[(Point, Rational)]) -> Value {
    Value::Array(
        rows.iter()
            .map(|(a, b)| json!({"a": enc_vector(a), "b": enc_rational(b)}))
            .collect(),
    )
}

pub fn enc_hrep(h: &HRep) -> Value {
    json!({"dim": h.dim, "ineqs": enc_rows(&h.ineqs), "eqs": enc_rows(&h.eqs)})
}

pub fn enc_vrep(v: &VRep) -> Value {
    json!({"dim": v.dim, "vertices": enc_vectors(&v.vertices), "rays": enc_vectors(&v.rays)})
}

/// Both representations side by side; re-parses through [`polyhedron`].
pub fn enc_set(p: &Polyhedron) -> Value {
    let h = p.hrep();
    let v = p.vrep();
    json!({
        "kind": "polyhedron",
        "dim": p.dim(),
        "empty": p.is_empty(),
        "ineqs": enc_rows(&h.ineqs),
        "eqs": enc_rows(&h.eqs),
        "vertices": enc_vectors(&v.vertices),
        "rays": enc_vectors(&v.rays),
    })
}

pub fn enc_cone(c: &PolyCone) -> Value {
    let c = c.minimized();
    json!({
        "kind": "cone",
        "dim": c.dim,
        "generators": enc_vectors(&c.generators),
        "lineality": enc_vectors(&c.lineality),
        "set": enc_set(&c.to_polyhedron()),
    })
}

pub fn enc_map(f: &SetValuedMap) -> Value {
    json!({
        "kind": "setvaluedmap",
        "dim_in": f.dim_in(),
        "dim_out": f.dim_out(),
        "graph": enc_set(f.graph()),
    })
}

pub fn enc_function(phi: &PolyFunction) -> Value {
    json!({"kind": "function", "dim": phi.dim(), "epi": enc_set(phi.epi())})
}

pub fn enc_linear_map(a: &LinearMap) -> Value {
    json!({"kind": "linearmap", "rows": a.rows(), "cols": a.cols(), "entries": enc_vectors(a.entries())})
}

#[cfg(test)]
mod tests {
    use super::*;
    use corecalc::rational::{frac, ints};

    #[test]
    fn rationals_are_strings() {
        assert_eq!(rational(&json!("-3/6"), "x").unwrap(), frac(-1, 2));
        assert!(rational(&json!(3), "x").is_err());
        assert!(rational(&json!("1.5"), "x").is_err());
        assert_eq!(enc_rational(&frac(4, -6)), json!("-2/3"));
    }

    #[test]
    fn both_forms_parse() {
        let h = polyhedron(
            &json!({"dim": 1, "ineqs": [{"a": ["1"], "b": "1"}, {"a": ["-1"], "b": "1"}]}),
            "P",
        )
        .unwrap();
        let v = polyhedron(&json!({"kind": "polyhedron", "dim": 1, "vertices": [["-1"], ["1"]]}), "Q").unwrap();
        assert!(h.set_equal(&v).unwrap());
        assert!(polyhedron(&json!({"dim": 1, "rays": [["1"]]}), "R").is_err());
    }

    #[test]
    fn sets_round_trip() {
        let sq = Polyhedron::boxed(&ints(&[0, 0]), &ints(&[1, 1])).unwrap();
        for p in [sq.clone(), Polyhedron::empty(2), Polyhedron::universe(2)] {
            let back = polyhedron(&enc_set(&p), "p").unwrap();
            assert!(back.set_equal(&p).unwrap());
        }
    }

    #[test]
    fn functions_from_pieces() {
        let abs = function(
            &json!({"kind": "function", "dim": 1, "pieces": [
                {"slope": ["1"], "offset": "0"}, {"slope": ["-1"], "offset": "0"}]}),
            "abs",
        )
        .unwrap();
        assert_eq!(abs.evaluate(&ints(&[-3])).unwrap(), Extended::Finite(frac(3, 1)));
        let back = function(&enc_function(&abs), "abs").unwrap();
        assert!(back.epi().set_equal(abs.epi()).unwrap());
    }

    #[test]
    fn kind_mismatch_is_reported() {
        let err = map(&json!({"kind": "function", "dim": 1}), "F").unwrap_err();
        assert!(err.to_string().contains("expected a setvaluedmap"));
    }
}
