//! Query execution: one engine call per operation, plus the optional
//! definitional cross-check.

use corecalc::corealg::{
    core_contains, difference, extremal_principle, gauge, is_absorbing, is_core_solid, is_extremal,
    separate_point, separate_sets, SeparationCertificate,
};
use corecalc::normalcalc::{
    coderivative, coderivative_chain_rule, coderivative_sum_rule, cone_intersect, cone_is_trivial, cone_neg,
    cone_sum, graph_core_check, intermediate_points, intersection_rule, map_compose, map_sum, normal_cone,
    sum_decompositions, PolyCone,
};
use corecalc::oracle::{
    oracle_core_member, oracle_normal_member, oracle_rule_equal, oracle_separation_valid, oracle_subgrad_member,
    OracleReport,
};
use corecalc::rational::{add, neg, sub, zeros};
use corecalc::subdiff::{
    adjoint_image, argmin_set, fn_add, fn_precompose, indicator, marginal_function, marginal_subdiff_rule,
    subdiff_chain_rule, subdiff_sum_rule, subdifferential, MarginalProblem,
};
use corecalc::{LinearMap, Point, PolyFunction, Polyhedron, Rational, RuleVerdict, SetValuedMap, VRep};
use serde_json::{json, Value};

use crate::codec::{self, enc_cone, enc_extended, enc_function, enc_map, enc_rational, enc_set, enc_vector};
use crate::error::{CliError, CliResult};
use crate::problem::{Object, Query, Workspace};

/// Samples per side for the randomized set-equality oracle.
const RULE_SAMPLES: usize = 16;

#[derive(Clone, Debug, Default)]
pub struct ExecOptions {
    pub oracle: bool,
    pub seed: u64,
    /// Honors `test_replace_rhs` in rule queries. Never set outside tests.
    pub test_hooks: bool,
}

#[derive(Clone, Debug)]
pub struct RuleFlags {
    pub qc_satisfied: bool,
    pub equal: bool,
    pub rhs_subset_lhs: bool,
}

#[derive(Clone, Debug)]
pub struct OracleCheck {
    pub report: OracleReport,
    /// Whether the oracle is consistent with the engine's answer.
    pub agrees: bool,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub result: Value,
    pub rule: Option<RuleFlags>,
    pub oracle: Option<OracleCheck>,
}

impl Outcome {
    fn plain(result: Value) -> Self {
        Outcome { result, rule: None, oracle: None }
    }
}

pub const OPERATIONS: &[&str] = &[
    "to_vrep", "to_hrep", "contains", "dimension", "minkowski_sum", "negate", "intersect", "product",
    "translate", "project", "set_equal", "core_contains", "is_core_solid", "is_absorbing", "gauge",
    "separate_point", "separate_sets", "is_extremal", "extremal_principle", "normal_cone", "cone_sum",
    "cone_neg", "cone_intersect", "cone_is_trivial", "intersection_rule", "graph_core_check", "coderivative",
    "map_sum", "sum_decompositions", "coderivative_sum_rule", "map_compose", "intermediate_points",
    "coderivative_chain_rule", "evaluate", "subdifferential", "fn_add", "subdiff_sum_rule", "fn_precompose",
    "adjoint_image", "subdiff_chain_rule", "indicator", "marginal_function", "argmin_set",
    "marginal_subdiff_rule", "oracle_normal_member", "oracle_subgrad_member", "oracle_core_member",
    "oracle_rule_equal",
];

struct Ctx<'a> {
    ws: &'a Workspace,
    q: &'a Query,
    opts: &'a ExecOptions,
}

impl<'a> Ctx<'a> {
    fn input(&self, msg: impl std::fmt::Display) -> CliError {
        CliError::Input(format!("{}: {msg}", self.q.op))
    }

    fn arity(&self, n: usize) -> CliResult<()> {
        if self.q.args.len() == n {
            Ok(())
        } else {
            Err(self.input(format!("expects {n} object argument(s), got {}", self.q.args.len())))
        }
    }

    fn obj(&self, i: usize) -> CliResult<&'a Object> {
        let name = self.q.args.get(i).ok_or_else(|| self.input(format!("missing argument {i}")))?;
        self.ws
            .objects
            .get(name)
            .ok_or_else(|| self.input(format!("undefined object \"{name}\"")))
    }

    fn mismatch(&self, i: usize, want: &str, got: &Object) -> CliError {
        self.input(format!("argument \"{}\" must be a {want}, not a {}", self.q.args[i], got.kind()))
    }

    fn set(&self, i: usize) -> CliResult<&'a Polyhedron> {
        match self.obj(i)? {
            Object::Set(p) => Ok(p),
            o => Err(self.mismatch(i, "polyhedron", o)),
        }
    }

    fn cone(&self, i: usize) -> CliResult<&'a PolyCone> {
        match self.obj(i)? {
            Object::Cone(c) => Ok(c),
            o => Err(self.mismatch(i, "cone", o)),
        }
    }

    fn func(&self, i: usize) -> CliResult<&'a PolyFunction> {
        match self.obj(i)? {
            Object::Function(f) => Ok(f),
            o => Err(self.mismatch(i, "function", o)),
        }
    }

    fn map(&self, i: usize) -> CliResult<&'a SetValuedMap> {
        match self.obj(i)? {
            Object::Map(f) => Ok(f),
            o => Err(self.mismatch(i, "setvaluedmap", o)),
        }
    }

    fn linear(&self, i: usize) -> CliResult<&'a LinearMap> {
        match self.obj(i)? {
            Object::Linear(a) => Ok(a),
            o => Err(self.mismatch(i, "linearmap", o)),
        }
    }

    fn vec(&self, key: &str, dim: usize) -> CliResult<Point> {
        let v = self
            .q
            .params
            .get(key)
            .ok_or_else(|| self.input(format!("missing \"{key}\"")))?;
        let ctx = format!("{}.{key}", self.q.op);
        let p = codec::vector(v, &ctx)?;
        codec::expect_len(&p, dim, &ctx)?;
        Ok(p)
    }

    fn uint(&self, key: &str) -> CliResult<Option<u64>> {
        match self.q.params.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(Some)
                .ok_or_else(|| self.input(format!("\"{key}\" must be a nonnegative integer"))),
        }
    }

    fn coords(&self) -> CliResult<Vec<usize>> {
        let v = self
            .q
            .params
            .get("coords")
            .and_then(Value::as_array)
            .ok_or_else(|| self.input("missing \"coords\" (0-based indices)"))?;
        v.iter()
            .map(|c| {
                c.as_u64()
                    .map(|c| c as usize)
                    .ok_or_else(|| self.input("coordinates must be nonnegative integers"))
            })
            .collect()
    }

    /// Applies the test-only right-hand-side replacement to a rule verdict.
    fn hooked(&self, v: RuleVerdict) -> CliResult<RuleVerdict> {
        let Some(rhs) = self.q.params.get("test_replace_rhs") else {
            return Ok(v);
        };
        if !self.opts.test_hooks {
            return Err(self.input("test_replace_rhs requires test hooks to be enabled"));
        }
        let rhs = codec::polyhedron(rhs, "test_replace_rhs")?;
        Ok(RuleVerdict::compare(v.lhs, rhs, v.qc_satisfied)?)
    }

    fn split(&self, p: &[Rational], n: usize) -> (Point, Point) {
        (p[..n].to_vec(), p[n..].to_vec())
    }
}

fn enc_certificate(c: &SeparationCertificate) -> Value {
    json!({
        "f": enc_vector(&c.f),
        "sup_lhs": enc_extended(&c.sup_lhs),
        "inf_rhs": enc_extended(&c.inf_rhs),
        "proper_witnesses": c.proper_witnesses.as_ref().map(|(a, b)| json!([enc_vector(a), enc_vector(b)])),
    })
}

fn enc_verdict(v: &RuleVerdict) -> Value {
    json!({
        "lhs": enc_set(&v.lhs),
        "rhs": enc_set(&v.rhs),
        "qc_satisfied": v.qc_satisfied,
        "equal": v.equal,
        "rhs_subset_lhs": v.rhs_subset_lhs,
    })
}

pub fn enc_oracle(r: &OracleReport) -> Value {
    json!({
        "claim": r.claim.name(),
        "verdict": r.verdict,
        "witness": r.witness.as_ref().map(|w| enc_vector(w)),
        "delta": r.delta.as_ref().map(enc_rational),
        "seed": r.seed,
    })
}

/// Vertices and `vertex + ray` points of a set, for membership spot checks.
fn generator_points(v: &VRep) -> Vec<Point> {
    let mut out = v.vertices.clone();
    if let Some(base) = v.vertices.first() {
        out.extend(v.rays.iter().map(|r| add(base, r)));
    }
    out
}

/// First failing report among the checks, or the last passing one;
/// `None` when there is nothing to check.
fn all_pass(
    points: &[Point],
    mut check: impl FnMut(&Point) -> CliResult<OracleReport>,
) -> CliResult<Option<OracleReport>> {
    let mut last = None;
    for p in points {
        let r = check(p)?;
        if !r.verdict {
            return Ok(Some(r));
        }
        last = Some(r);
    }
    Ok(last)
}

fn agreeing(report: OracleReport, expected: bool) -> OracleCheck {
    OracleCheck { agrees: report.verdict == expected, report }
}

fn rule_outcome(ctx: &Ctx, v: RuleVerdict) -> CliResult<Outcome> {
    let v = ctx.hooked(v)?;
    let oracle = if ctx.opts.oracle {
        let r = oracle_rule_equal(&v.lhs, &v.rhs, RULE_SAMPLES, ctx.opts.seed)?;
        // sampling can refute equality but never prove it
        let agrees = r.verdict || !v.equal;
        Some(OracleCheck { report: r, agrees })
    } else {
        None
    };
    Ok(Outcome {
        result: enc_verdict(&v),
        rule: Some(RuleFlags {
            qc_satisfied: v.qc_satisfied,
            equal: v.equal,
            rhs_subset_lhs: v.rhs_subset_lhs,
        }),
        oracle,
    })
}

fn marginal(ctx: &Ctx) -> CliResult<MarginalProblem> {
    Ok(MarginalProblem::new(ctx.func(0)?.clone(), ctx.map(1)?.clone())?)
}

pub fn execute(ws: &Workspace, q: &Query, opts: &ExecOptions) -> CliResult<Outcome> {
    let ctx = Ctx { ws, q, opts };
    let oracle = opts.oracle;
    let out = match q.op.as_str() {
        "to_vrep" | "to_hrep" | "negate" => {
            ctx.arity(1)?;
            let p = ctx.set(0)?;
            let r = if q.op == "negate" { p.negate() } else { p.clone() };
            Outcome::plain(enc_set(&r))
        }
        "contains" => {
            ctx.arity(1)?;
            let p = ctx.set(0)?;
            Outcome::plain(json!(p.contains(&ctx.vec("point", p.dim())?)?))
        }
        "dimension" => {
            ctx.arity(1)?;
            Outcome::plain(json!(ctx.set(0)?.dimension()))
        }
        "minkowski_sum" | "intersect" | "product" | "set_equal" => {
            ctx.arity(2)?;
            let (a, b) = (ctx.set(0)?, ctx.set(1)?);
            Outcome::plain(match q.op.as_str() {
                "minkowski_sum" => enc_set(&a.minkowski_sum(b)?),
                "intersect" => enc_set(&a.intersect(b)?),
                "product" => enc_set(&a.product(b)),
                _ => json!(a.set_equal(b)?),
            })
        }
        "translate" => {
            ctx.arity(1)?;
            let p = ctx.set(0)?;
            Outcome::plain(enc_set(&p.translate(&ctx.vec("v", p.dim())?)?))
        }
        "project" => {
            ctx.arity(1)?;
            Outcome::plain(enc_set(&ctx.set(0)?.project(&ctx.coords()?)?))
        }
        "core_contains" => {
            ctx.arity(1)?;
            let p = ctx.set(0)?;
            let x = ctx.vec("point", p.dim())?;
            let inside = core_contains(p, &x)?;
            Outcome {
                result: json!(inside),
                rule: None,
                oracle: oracle.then(|| oracle_core_member(p, &x).map(|r| agreeing(r, inside))).transpose()?,
            }
        }
        "is_core_solid" => {
            ctx.arity(1)?;
            let p = ctx.set(0)?;
            let w = is_core_solid(p);
            let check = match (&w, oracle) {
                (Some(w), true) => Some(agreeing(oracle_core_member(p, w)?, true)),
                _ => None,
            };
            Outcome {
                result: json!({"solid": w.is_some(), "witness": w.as_ref().map(|w| enc_vector(w))}),
                rule: None,
                oracle: check,
            }
        }
        "is_absorbing" => {
            ctx.arity(1)?;
            let p = ctx.set(0)?;
            let abs = is_absorbing(p);
            Outcome {
                result: json!(abs),
                rule: None,
                oracle: oracle
                    .then(|| oracle_core_member(p, &zeros(p.dim())).map(|r| agreeing(r, abs)))
                    .transpose()?,
            }
        }
        "gauge" => {
            ctx.arity(1)?;
            let p = ctx.set(0)?;
            Outcome::plain(enc_rational(&gauge(p, &ctx.vec("point", p.dim())?)?))
        }
        "separate_point" => {
            ctx.arity(1)?;
            let p = ctx.set(0)?;
            let x0 = ctx.vec("point", p.dim())?;
            let cert = separate_point(p, &x0)?;
            let check = if oracle {
                Some(match &cert {
                    Some(c) => {
                        let (w, _) = c.proper_witnesses.clone().unwrap_or_else(|| (x0.clone(), x0.clone()));
                        agreeing(oracle_separation_valid(p, &x0, &c.f, &w)?, true)
                    }
                    None => agreeing(oracle_core_member(p, &x0)?, true),
                })
            } else {
                None
            };
            Outcome {
                result: json!({"separated": cert.is_some(), "certificate": cert.as_ref().map(enc_certificate)}),
                rule: None,
                oracle: check,
            }
        }
        "separate_sets" => {
            ctx.arity(2)?;
            let (a, b) = (ctx.set(0)?, ctx.set(1)?);
            let cert = separate_sets(a, b)?;
            let check = if oracle {
                // f separates the sets iff it separates 0 from their difference
                let diff = difference(a, b)?;
                let origin = zeros(a.dim());
                Some(match &cert {
                    Some(c) => {
                        let w = c
                            .proper_witnesses
                            .as_ref()
                            .map(|(w1, w2)| sub(w1, w2))
                            .unwrap_or_else(|| origin.clone());
                        agreeing(oracle_separation_valid(&diff, &origin, &c.f, &w)?, true)
                    }
                    None => agreeing(oracle_core_member(&diff, &origin)?, true),
                })
            } else {
                None
            };
            Outcome {
                result: json!({"separated": cert.is_some(), "certificate": cert.as_ref().map(enc_certificate)}),
                rule: None,
                oracle: check,
            }
        }
        "is_extremal" => {
            ctx.arity(2)?;
            let (a, b) = (ctx.set(0)?, ctx.set(1)?);
            let cert = is_extremal(a, b)?;
            let check = if oracle {
                let r = oracle_core_member(&difference(a, b)?, &zeros(a.dim()))?;
                Some(agreeing(r, !cert.verdict))
            } else {
                None
            };
            Outcome {
                result: json!({
                    "extremal": cert.verdict,
                    "direction": cert.direction.as_ref().map(|d| enc_vector(d)),
                    "checked_ts": cert.checked_ts.iter().map(enc_rational).collect::<Vec<_>>(),
                }),
                rule: None,
                oracle: check,
            }
        }
        "extremal_principle" => {
            ctx.arity(2)?;
            let (a, b) = (ctx.set(0)?, ctx.set(1)?);
            let x = ctx.vec("point", a.dim())?;
            let f = extremal_principle(a, b, &x)?;
            let check = match (&f, oracle) {
                (Some(f), true) => {
                    let r1 = oracle_normal_member(a, &x, f)?;
                    let r = if r1.verdict { oracle_normal_member(b, &x, &neg(f))? } else { r1 };
                    Some(agreeing(r, true))
                }
                _ => None,
            };
            Outcome {
                result: json!({"f": f.as_ref().map(|f| enc_vector(f))}),
                rule: None,
                oracle: check,
            }
        }
        "normal_cone" => {
            ctx.arity(1)?;
            let p = ctx.set(0)?;
            let x = ctx.vec("point", p.dim())?;
            let c = normal_cone(p, &x)?.ok_or_else(|| ctx.input("point is not in the set"))?;
            let check = if oracle {
                let mut pts = vec![zeros(p.dim())];
                pts.extend(c.generators.iter().cloned());
                pts.extend(c.lineality.iter().cloned());
                pts.extend(c.lineality.iter().map(|l| neg(l)));
                all_pass(&pts, |f| Ok(oracle_normal_member(p, &x, f)?))?.map(|r| agreeing(r, true))
            } else {
                None
            };
            Outcome { result: enc_cone(&c), rule: None, oracle: check }
        }
        "cone_sum" | "cone_intersect" => {
            ctx.arity(2)?;
            let (a, b) = (ctx.cone(0)?, ctx.cone(1)?);
            let c = if q.op == "cone_sum" { cone_sum(a, b)? } else { cone_intersect(a, b)? };
            Outcome::plain(enc_cone(&c))
        }
        "cone_neg" => {
            ctx.arity(1)?;
            Outcome::plain(enc_cone(&cone_neg(ctx.cone(0)?)))
        }
        "cone_is_trivial" => {
            ctx.arity(1)?;
            Outcome::plain(json!(cone_is_trivial(ctx.cone(0)?)))
        }
        "intersection_rule" => {
            ctx.arity(2)?;
            let (a, b) = (ctx.set(0)?, ctx.set(1)?);
            let x = ctx.vec("point", a.dim())?;
            rule_outcome(&ctx, intersection_rule(a, b, &x)?)?
        }
        "graph_core_check" => {
            ctx.arity(1)?;
            let f = ctx.map(0)?;
            let p = ctx.vec("point", f.dim_in() + f.dim_out())?;
            let (x, y) = ctx.split(&p, f.dim_in());
            let (lhs, rhs) = graph_core_check(f, &x, &y)?;
            Outcome {
                result: json!({"lhs": lhs, "rhs": rhs}),
                rule: None,
                oracle: oracle
                    .then(|| oracle_core_member(f.graph(), &p).map(|r| agreeing(r, lhs)))
                    .transpose()?,
            }
        }
        "coderivative" => {
            ctx.arity(1)?;
            let f = ctx.map(0)?;
            let p = ctx.vec("point", f.dim_in() + f.dim_out())?;
            let (x, y) = ctx.split(&p, f.dim_in());
            let g = ctx.vec("g", f.dim_out())?;
            let d = coderivative(f, &x, &y, &g)?;
            let check = if oracle {
                let ng = neg(&g);
                let pts = generator_points(d.vrep());
                let normal = |v: &Point| -> CliResult<OracleReport> {
                    let fg: Point = v.iter().chain(&ng).cloned().collect();
                    Ok(oracle_normal_member(f.graph(), &p, &fg)?)
                };
                all_pass(&pts, normal)?.map(|r| agreeing(r, true))
            } else {
                None
            };
            Outcome { result: enc_set(&d), rule: None, oracle: check }
        }
        "map_sum" => {
            ctx.arity(2)?;
            Outcome::plain(enc_map(&map_sum(ctx.map(0)?, ctx.map(1)?)?))
        }
        "sum_decompositions" => {
            ctx.arity(2)?;
            let (f1, f2) = (ctx.map(0)?, ctx.map(1)?);
            let p = ctx.vec("point", f1.dim_in() + f1.dim_out())?;
            let (x, y) = ctx.split(&p, f1.dim_in());
            Outcome::plain(enc_set(&sum_decompositions(f1, f2, &x, &y)?))
        }
        "coderivative_sum_rule" => {
            ctx.arity(2)?;
            let (f1, f2) = (ctx.map(0)?, ctx.map(1)?);
            let m = f1.dim_out();
            let p = ctx.vec("point", f1.dim_in() + m)?;
            let (x, y) = ctx.split(&p, f1.dim_in());
            let (y1, y2, g) = (ctx.vec("y1", m)?, ctx.vec("y2", m)?, ctx.vec("g", m)?);
            rule_outcome(&ctx, coderivative_sum_rule(f1, f2, &x, &y, &y1, &y2, &g)?)?
        }
        "map_compose" => {
            ctx.arity(2)?;
            Outcome::plain(enc_map(&map_compose(ctx.map(0)?, ctx.map(1)?)?))
        }
        "intermediate_points" => {
            ctx.arity(2)?;
            let (f, g) = (ctx.map(0)?, ctx.map(1)?);
            let p = ctx.vec("point", f.dim_in() + g.dim_out())?;
            let (x, z) = ctx.split(&p, f.dim_in());
            Outcome::plain(enc_set(&intermediate_points(f, g, &x, &z)?))
        }
        "coderivative_chain_rule" => {
            ctx.arity(2)?;
            let (f, g) = (ctx.map(0)?, ctx.map(1)?);
            let p = ctx.vec("point", f.dim_in() + g.dim_out())?;
            let (x, z) = ctx.split(&p, f.dim_in());
            let y = ctx.vec("y", f.dim_out())?;
            let h = ctx.vec("h", g.dim_out())?;
            rule_outcome(&ctx, coderivative_chain_rule(f, g, &x, &z, &y, &h)?)?
        }
        "evaluate" => {
            ctx.arity(1)?;
            let phi = ctx.func(0)?;
            Outcome::plain(enc_extended(&phi.evaluate(&ctx.vec("point", phi.dim())?)?))
        }
        "subdifferential" => {
            ctx.arity(1)?;
            let phi = ctx.func(0)?;
            let x = ctx.vec("point", phi.dim())?;
            let s = subdifferential(phi, &x)?;
            let check = if oracle {
                let pts = generator_points(s.vrep());
                all_pass(&pts, |f| Ok(oracle_subgrad_member(phi, &x, f)?))?.map(|r| agreeing(r, true))
            } else {
                None
            };
            Outcome { result: enc_set(&s), rule: None, oracle: check }
        }
        "fn_add" => {
            ctx.arity(2)?;
            Outcome::plain(enc_function(&fn_add(ctx.func(0)?, ctx.func(1)?)?))
        }
        "subdiff_sum_rule" => {
            ctx.arity(2)?;
            let (p1, p2) = (ctx.func(0)?, ctx.func(1)?);
            let x = ctx.vec("point", p1.dim())?;
            rule_outcome(&ctx, subdiff_sum_rule(p1, p2, &x)?)?
        }
        "fn_precompose" => {
            ctx.arity(2)?;
            Outcome::plain(enc_function(&fn_precompose(ctx.func(0)?, ctx.linear(1)?)?))
        }
        "adjoint_image" => {
            ctx.arity(2)?;
            Outcome::plain(enc_set(&adjoint_image(ctx.linear(0)?, ctx.set(1)?)?))
        }
        "subdiff_chain_rule" => {
            ctx.arity(2)?;
            let (phi, a) = (ctx.func(0)?, ctx.linear(1)?);
            let x = ctx.vec("point", a.cols())?;
            rule_outcome(&ctx, subdiff_chain_rule(phi, a, &x)?)?
        }
        "indicator" => {
            ctx.arity(1)?;
            let phi = indicator(ctx.set(0)?)?;
            let mut v = enc_function(&phi);
            v["epi_core_solid"] = json!(phi.is_epi_core_solid());
            Outcome::plain(v)
        }
        "marginal_function" => {
            ctx.arity(2)?;
            Outcome::plain(enc_function(&marginal_function(&marginal(&ctx)?)))
        }
        "argmin_set" => {
            ctx.arity(2)?;
            let m = marginal(&ctx)?;
            let x = ctx.vec("point", m.map().dim_in())?;
            Outcome::plain(enc_set(&argmin_set(&m, &x)?))
        }
        "marginal_subdiff_rule" => {
            ctx.arity(2)?;
            let m = marginal(&ctx)?;
            let x = ctx.vec("point", m.map().dim_in())?;
            let y = ctx.vec("y", m.map().dim_out())?;
            rule_outcome(&ctx, marginal_subdiff_rule(&m, &x, &y)?)?
        }
        "oracle_normal_member" => {
            ctx.arity(1)?;
            let p = ctx.set(0)?;
            let (x, f) = (ctx.vec("point", p.dim())?, ctx.vec("f", p.dim())?);
            Outcome::plain(enc_oracle(&oracle_normal_member(p, &x, &f)?))
        }
        "oracle_subgrad_member" => {
            ctx.arity(1)?;
            let phi = ctx.func(0)?;
            let (x, f) = (ctx.vec("point", phi.dim())?, ctx.vec("f", phi.dim())?);
            Outcome::plain(enc_oracle(&oracle_subgrad_member(phi, &x, &f)?))
        }
        "oracle_core_member" => {
            ctx.arity(1)?;
            let p = ctx.set(0)?;
            Outcome::plain(enc_oracle(&oracle_core_member(p, &ctx.vec("point", p.dim())?)?))
        }
        "oracle_rule_equal" => {
            ctx.arity(2)?;
            let samples = ctx.uint("samples")?.unwrap_or(RULE_SAMPLES as u64) as usize;
            let seed = ctx.uint("seed")?.unwrap_or(opts.seed);
            Outcome::plain(enc_oracle(&oracle_rule_equal(ctx.set(0)?, ctx.set(1)?, samples, seed)?))
        }
        other => return Err(CliError::Input(format!("unknown operation \"{other}\""))),
    };
    Ok(out)
}

/// Canonical encoding of a decoded object, used to echo query inputs.
pub fn echo_object(o: &Object) -> Value {
    match o {
        Object::Set(p) => enc_set(p),
        Object::Cone(c) => enc_cone(c),
        Object::Function(f) => enc_function(f),
        Object::Map(f) => enc_map(f),
        Object::Linear(a) => codec::enc_linear_map(a),
    }
}
