//! Problem files: named objects plus an ordered list of queries.

use std::collections::BTreeMap;
use std::path::Path;

use corecalc::normalcalc::PolyCone;
use corecalc::{LinearMap, PolyFunction, Polyhedron, SetValuedMap};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::codec;
use crate::error::{CliError, CliResult};

pub const VERSION: &str = "1";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: String,
    #[serde(default)]
    pub objects: BTreeMap<String, Value>,
    #[serde(default)]
    pub queries: Vec<Query>,
}

/// One command. Operation-specific inputs (`point`, `g`, `coords`, ...)
/// live in `params`; `expect` optionally pins the result.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Query {
    pub op: String,
    #[serde(default)]
    pub args: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Value>,
    #[serde(flatten)]
    pub params: BTreeMap<String, Value>,
}

#[derive(Clone, Debug)]
pub enum Object {
    Set(Polyhedron),
    Cone(PolyCone),
    Function(PolyFunction),
    Map(SetValuedMap),
    Linear(LinearMap),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Set(_) => "polyhedron",
            Object::Cone(_) => "cone",
            Object::Function(_) => "function",
            Object::Map(_) => "setvaluedmap",
            Object::Linear(_) => "linearmap",
        }
    }
}

fn decode(name: &str, v: &Value) -> CliResult<Object> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::Input(format!("object \"{name}\": missing \"kind\"")))?;
    let ctx = format!("object \"{name}\"");
    Ok(match kind {
        "polyhedron" => Object::Set(codec::polyhedron(v, &ctx)?),
        "cone" => Object::Cone(codec::cone(v, &ctx)?),
        "function" => Object::Function(codec::function(v, &ctx)?),
        "setvaluedmap" => Object::Map(codec::map(v, &ctx)?),
        "linearmap" => Object::Linear(codec::linear_map(v, &ctx)?),
        other => return Err(CliError::Input(format!("{ctx}: unknown kind \"{other}\""))),
    })
}

/// Decoded objects, checked against every query's references.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub objects: BTreeMap<String, Object>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let p: ProblemFile = serde_json::from_str(text)?;
        if p.version != VERSION {
            return Err(CliError::Input(format!("unsupported version \"{}\"", p.version)));
        }
        Ok(p)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn workspace(&self) -> CliResult<Workspace> {
        let objects = self
            .objects
            .iter()
            .map(|(name, v)| Ok((name.clone(), decode(name, v)?)))
            .collect::<CliResult<BTreeMap<_, _>>>()?;
        for (i, q) in self.queries.iter().enumerate() {
            for a in &q.args {
                if !objects.contains_key(a) {
                    return Err(CliError::Input(format!(
                        "query {i} ({}): undefined object \"{a}\"",
                        q.op
                    )));
                }
            }
        }
        Ok(Workspace { objects })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = r#"{"kind":"polyhedron","dim":2,"vertices":[["0","0"],["1","0"],["0","1"],["1","1"]]}"#;

    #[test]
    fn missing_object_is_named() {
        let text = format!(
            r#"{{"version":"1","objects":{{"Om1":{SQUARE}}},
               "queries":[{{"op":"intersection_rule","args":["Om1","Omega3"],"point":["0","0"]}}]}}"#
        );
        let err = ProblemFile::parse(&text).unwrap().workspace().unwrap_err();
        assert!(err.to_string().contains("Omega3"));
    }

    #[test]
    fn params_are_collected() {
        let text = format!(
            r#"{{"version":"1","objects":{{"S":{SQUARE}}},
               "queries":[{{"op":"contains","args":["S"],"point":["1/2","0"],"expect":{{"result":true}}}}]}}"#
        );
        let p = ProblemFile::parse(&text).unwrap();
        assert!(p.queries[0].params.contains_key("point"));
        assert!(p.queries[0].expect.is_some());
        assert!(matches!(p.workspace().unwrap().objects["S"], Object::Set(_)));
    }

    #[test]
    fn version_and_kind_are_checked() {
        assert!(ProblemFile::parse(r#"{"version":"2"}"#).is_err());
        let bad = r#"{"version":"1","objects":{"X":{"kind":"blob"}}}"#;
        assert!(ProblemFile::parse(bad).unwrap().workspace().is_err());
    }
}
