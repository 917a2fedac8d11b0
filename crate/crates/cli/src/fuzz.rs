//! `fuzz`: randomized campaigns over the calculus rules and the core
//! characterizations.
//!
//! Instance `i` of check `c` is drawn from its own ChaCha stream keyed by
//! `(seed, c, i)`, so results do not depend on scheduling. Rule checks
//! assert `rhs ⊆ lhs` always and equality whenever the qualification
//! condition holds. A failing instance is written out as a problem file
//! (H-representations only) after greedily dropping inequality rows that
//! are not needed to reproduce the failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use corecalc::corealg::{
    core_contains, extremal_principle, gauge, is_core_solid, is_extremal, separate_point, separate_sets,
};
use corecalc::generate::{
    absorbing, chain_instance, extremal_instance, fn_chain_instance, fn_sum_instance, intersection_instance,
    map_and_point, marginal_instance, normal_query, set_and_point, subgrad_query, sum_instance, ChainInstance, FnChainInstance,
    FnSumInstance, Gen, MarginalInstance, SetPair, SumInstance,
};
use corecalc::normalcalc::{
    coderivative_chain_rule, coderivative_sum_rule, graph_core_check, intersection_rule, normal_cone,
};
use corecalc::oracle::{oracle_normal_member, oracle_separation_valid, oracle_subgrad_member};
use corecalc::polyhedra::HRep;
use corecalc::rational::{add, dot, int, scale, Extended};
use corecalc::subdiff::{marginal_subdiff_rule, subdiff_chain_rule, subdiff_sum_rule, subdifferential};
use corecalc::{LinearMap, Point, PolyFunction, Polyhedron, Rational, RuleVerdict, SetValuedMap};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::codec::{enc_linear_map, enc_rational, enc_vector};
use crate::error::{CliError, CliResult};
use crate::problem::{ProblemFile, Query, VERSION};
use crate::run::{run_problem, Exit, RunOptions};

/// Number of halvings checked by an extremality certificate, plus one.
const SHIFTS: usize = 21;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    IntersectionRule,
    CoderivativeSumRule,
    CoderivativeChainRule,
    SubdiffSumRule,
    SubdiffChainRule,
    MarginalRule,
    GraphCore,
    Extremality,
    PointSeparation,
    SegmentCore,
    GaugeLaws,
    NormalOracle,
    SubgradOracle,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::IntersectionRule,
        Check::CoderivativeSumRule,
        Check::CoderivativeChainRule,
        Check::SubdiffSumRule,
        Check::SubdiffChainRule,
        Check::MarginalRule,
        Check::GraphCore,
        Check::Extremality,
        Check::PointSeparation,
        Check::SegmentCore,
        Check::GaugeLaws,
        Check::NormalOracle,
        Check::SubgradOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::IntersectionRule => "intersection_rule",
            Check::CoderivativeSumRule => "coderivative_sum_rule",
            Check::CoderivativeChainRule => "coderivative_chain_rule",
            Check::SubdiffSumRule => "subdiff_sum_rule",
            Check::SubdiffChainRule => "subdiff_chain_rule",
            Check::MarginalRule => "marginal_subdiff_rule",
            Check::GraphCore => "graph_core_check",
            Check::Extremality => "extremality",
            Check::PointSeparation => "point_separation",
            Check::SegmentCore => "segment_in_core",
            Check::GaugeLaws => "gauge_laws",
            Check::NormalOracle => "normal_cone_oracle",
            Check::SubgradOracle => "subgradient_oracle",
        }
    }

    pub fn is_rule(self) -> bool {
        matches!(
            self,
            Check::IntersectionRule
                | Check::CoderivativeSumRule
                | Check::CoderivativeChainRule
                | Check::SubdiffSumRule
                | Check::SubdiffChainRule
                | Check::MarginalRule
        )
    }

    fn tag(self) -> u64 {
        Check::ALL.iter().position(|c| *c == self).unwrap() as u64
    }
}

/// Dimensions for one campaign: sets live in `Q^set_dim`; maps and
/// marginal problems draw each block size from `1..=block_cap`.
#[derive(Clone, Copy, Debug)]
pub struct Dims {
    pub set_dim: usize,
    pub block_cap: usize,
}

impl Dims {
    pub fn for_dimension(d: usize) -> Self {
        Dims {
            set_dim: d.max(1),
            block_cap: d.clamp(1, 2),
        }
    }
}

pub enum Instance {
    Pair(SetPair),
    Sum(SumInstance),
    Chain(ChainInstance),
    FnSum(FnSumInstance),
    FnChain(FnChainInstance),
    Marginal(MarginalInstance),
    MapPoint(SetValuedMap, Point, Point),
    Sets(Polyhedron, Polyhedron),
    SetPoint(Polyhedron, Point),
    Segment { omega: Polyhedron, b: Point, lambda: Rational },
    Gauge { omega: Polyhedron, x: Point, y: Point, t: Rational },
    Normal { omega: Polyhedron, x: Point, f: Point, member: bool },
    Subgrad { phi: PolyFunction, x: Point, f: Point, member: bool },
}

/// Verdict on one instance. `hypothesis` is the qualification condition
/// for rules (as computed, not as intended) and always true otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub hypothesis: bool,
    pub conclusion: bool,
    pub failure: Option<String>,
}

impl Verdict {
    fn of_rule(v: &RuleVerdict) -> Self {
        let failure = if !v.rhs_subset_lhs {
            Some("rhs is not contained in lhs".to_string())
        } else if v.qc_satisfied && !v.equal {
            Some("qualification condition holds but lhs != rhs".to_string())
        } else {
            None
        };
        Verdict {
            hypothesis: v.qc_satisfied,
            conclusion: v.equal,
            failure,
        }
    }

    fn of_check(failure: Option<String>) -> Self {
        Verdict {
            hypothesis: true,
            conclusion: failure.is_none(),
            failure,
        }
    }
}

fn block(g: &mut Gen, cap: usize) -> usize {
    g.int(1, cap as i64) as usize
}

/// Draws one instance. `qc` asks the generator for data satisfying the
/// qualification condition; for oracle checks it selects members.
pub fn generate(check: Check, g: &mut Gen, dims: Dims, qc: bool) -> Instance {
    let n = dims.set_dim;
    let cap = dims.block_cap;
    match check {
        Check::IntersectionRule => Instance::Pair(intersection_instance(g, n, qc)),
        Check::CoderivativeSumRule => {
            let (a, b) = (block(g, cap), block(g, cap));
            Instance::Sum(sum_instance(g, a, b, qc))
        }
        Check::CoderivativeChainRule => {
            let (a, b, c) = (block(g, cap), block(g, cap), block(g, cap));
            Instance::Chain(chain_instance(g, a, b, c, qc))
        }
        Check::SubdiffSumRule => Instance::FnSum(fn_sum_instance(g, n.min(3), qc)),
        Check::SubdiffChainRule => {
            let (a, b) = (block(g, cap), block(g, cap));
            Instance::FnChain(fn_chain_instance(g, a, b, qc))
        }
        Check::MarginalRule => {
            let (a, b) = (block(g, cap), block(g, cap));
            Instance::Marginal(marginal_instance(g, a, b, qc))
        }
        Check::GraphCore => {
            let (a, b) = (block(g, cap), block(g, cap));
            let (f, x, y) = map_and_point(g, a, b);
            Instance::MapPoint(f, x, y)
        }
        Check::Extremality => {
            let (o1, o2) = extremal_instance(g, n);
            Instance::Sets(o1, o2)
        }
        Check::PointSeparation => {
            let (omega, x) = set_and_point(g, n);
            Instance::SetPoint(omega, x)
        }
        Check::SegmentCore => {
            let c = g.point(n, 3);
            let omega = g.solid(n, &c);
            let b = g.pick(&omega);
            let lambda = Rational::new(g.int(1, 16), 16);
            Instance::Segment { omega, b, lambda }
        }
        Check::GaugeLaws => {
            let omega = absorbing(g, n);
            let x = g.point(n, 5);
            let y = g.point(n, 5);
            let t = g.positive(5);
            Instance::Gauge { omega, x, y, t }
        }
        Check::NormalOracle => {
            let (omega, x, f) = normal_query(g, n, qc);
            Instance::Normal { omega, x, f, member: qc }
        }
        Check::SubgradOracle => {
            let (phi, x, f) = subgrad_query(g, n.min(3), qc);
            Instance::Subgrad { phi, x, f, member: qc }
        }
    }
}

fn fail_if(cond: bool, msg: impl FnOnce() -> String) -> Option<String> {
    if cond {
        Some(msg())
    } else {
        None
    }
}

/// Checks the three-way agreement behind extremality and the listed
/// shifts of its certificate.
fn check_extremal(o1: &Polyhedron, o2: &Polyhedron) -> CliResult<Option<String>> {
    let cert = is_extremal(o1, o2)?;
    let sep = separate_sets(o1, o2)?;
    if cert.verdict != sep.is_some() {
        return Ok(Some(format!("is_extremal={} but separation exists={}", cert.verdict, sep.is_some())));
    }
    if let Some(x) = o1.intersect(o2)?.any_point() {
        let f = extremal_principle(o1, o2, &x)?;
        if cert.verdict != f.is_some() {
            return Ok(Some(format!("is_extremal={} but extremal principle gives {}", cert.verdict, f.is_some())));
        }
    }
    if let Some(s) = &sep {
        if s.sup_lhs > s.inf_rhs {
            return Ok(Some("separation certificate has sup > inf".into()));
        }
        match &s.proper_witnesses {
            Some((w1, w2)) if dot(&s.f, w1) < dot(&s.f, w2) => {}
            _ => return Ok(Some("separation is not proper".into())),
        }
    }
    if cert.verdict {
        if cert.checked_ts.len() != SHIFTS {
            return Ok(Some(format!("{} of {SHIFTS} shifts certified", cert.checked_ts.len())));
        }
        let x0 = cert.direction.clone().expect("extremal certificate has a direction");
        for t in &cert.checked_ts {
            if !o1.translate(&scale(&x0, t))?.intersect(o2)?.is_empty() {
                return Ok(Some(format!("shift t={t} meets the second set")));
            }
        }
    }
    Ok(None)
}

/// Certificate iff outside the core; each certificate is re-verified by
/// an LP for the support value and by the generator oracle.
fn check_separation(omega: &Polyhedron, x0: &[Rational]) -> CliResult<Option<String>> {
    let cert = separate_point(omega, x0)?;
    let inside = core_contains(omega, x0)?;
    if cert.is_some() == inside {
        return Ok(Some(format!("core_contains={inside} but certificate={}", cert.is_some())));
    }
    let Some(c) = cert else { return Ok(None) };
    let fx0 = dot(&c.f, x0);
    if omega.support(&c.f)? > Extended::Finite(fx0.clone()) {
        return Ok(Some("sup of f over the set exceeds f(x0)".into()));
    }
    let Some((w, _)) = &c.proper_witnesses else {
        return Ok(Some("certificate lacks a proper witness".into()));
    };
    if !omega.contains(w)? || dot(&c.f, w) >= fx0 {
        return Ok(Some("proper witness is not strictly below f(x0)".into()));
    }
    let r = oracle_separation_valid(omega, x0, &c.f, w)?;
    Ok(fail_if(!r.verdict, || format!("separation oracle rejects the certificate at {:?}", r.witness)))
}

fn check_gauge(omega: &Polyhedron, x: &[Rational], y: &[Rational], t: &Rational) -> CliResult<Option<String>> {
    let gx = gauge(omega, x)?;
    let gy = gauge(omega, y)?;
    if gauge(omega, &add(x, y))? > &gx + &gy {
        return Ok(Some("gauge is not subadditive".into()));
    }
    if gauge(omega, &scale(x, t))? != t * &gx {
        return Ok(Some("gauge is not positively homogeneous".into()));
    }
    Ok(None)
}

pub fn evaluate(inst: &Instance) -> CliResult<Verdict> {
    Ok(match inst {
        Instance::Pair(p) => Verdict::of_rule(&intersection_rule(&p.o1, &p.o2, &p.x)?),
        Instance::Sum(s) => Verdict::of_rule(&coderivative_sum_rule(&s.f1, &s.f2, &s.x, &s.y, &s.y1, &s.y2, &s.g)?),
        Instance::Chain(c) => Verdict::of_rule(&coderivative_chain_rule(&c.f, &c.g, &c.x, &c.z, &c.y, &c.h)?),
        Instance::FnSum(s) => Verdict::of_rule(&subdiff_sum_rule(&s.phi1, &s.phi2, &s.x)?),
        Instance::FnChain(c) => Verdict::of_rule(&subdiff_chain_rule(&c.phi, &c.a, &c.x)?),
        Instance::Marginal(m) => Verdict::of_rule(&marginal_subdiff_rule(&m.problem, &m.x, &m.y)?),
        Instance::MapPoint(f, x, y) => {
            let (lhs, rhs) = graph_core_check(f, x, y)?;
            Verdict::of_check(fail_if(lhs != rhs, || format!("graph core lhs={lhs} rhs={rhs}")))
        }
        Instance::Sets(o1, o2) => Verdict::of_check(check_extremal(o1, o2)?),
        Instance::SetPoint(omega, x) => Verdict::of_check(check_separation(omega, x)?),
        Instance::Segment { omega, b, lambda } => {
            let a = is_core_solid(omega).expect("generated set is solid");
            let p = add(&scale(&a, lambda), &scale(b, &(int(1) - lambda)));
            let ok = core_contains(omega, &p)?;
            Verdict::of_check(fail_if(!ok, || "point of [a, b) outside the core".into()))
        }
        Instance::Gauge { omega, x, y, t } => Verdict::of_check(check_gauge(omega, x, y, t)?),
        Instance::Normal { omega, x, f, member } => {
            let engine = normal_cone(omega, x)?.expect("x in the set").contains(f)?;
            let oracle = oracle_normal_member(omega, x, f)?.verdict;
            Verdict::of_check(fail_if(engine != oracle || engine != *member, || {
                format!("engine={engine} oracle={oracle} intended={member}")
            }))
        }
        Instance::Subgrad { phi, x, f, member } => {
            let engine = subdifferential(phi, x)?.contains(f)?;
            let oracle = oracle_subgrad_member(phi, x, f)?.verdict;
            Verdict::of_check(fail_if(engine != oracle || engine != *member, || {
                format!("engine={engine} oracle={oracle} intended={member}")
            }))
        }
    })
}

fn enc_h(h: &HRep) -> Value {
    let rows = |rs: &[(Point, Rational)]| -> Value {
        rs.iter()
            .map(|(a, b)| json!({"a": enc_vector(a), "b": enc_rational(b)}))
            .collect()
    };
    json!({"kind": "polyhedron", "dim": h.dim, "ineqs": rows(&h.ineqs), "eqs": rows(&h.eqs)})
}

fn enc_map_h(f: &SetValuedMap) -> Value {
    json!({"kind": "setvaluedmap", "dim_in": f.dim_in(), "dim_out": f.dim_out(), "graph": enc_h(f.graph().hrep())})
}

fn enc_fn_h(phi: &PolyFunction) -> Value {
    json!({"kind": "function", "dim": phi.dim(), "epi": enc_h(phi.epi().hrep())})
}

fn enc_lin(a: &LinearMap) -> Value {
    enc_linear_map(a)
}

fn join(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().chain(b).cloned().collect()
}

fn query(op: &str, args: &[&str], params: &[(&str, Value)]) -> Query {
    Query {
        op: op.into(),
        args: args.iter().map(|s| s.to_string()).collect(),
        expect: None,
        params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
    }
}

/// The instance as a replayable problem file.
pub fn to_problem(inst: &Instance) -> ProblemFile {
    let mut objects = Map::new();
    let mut put = |name: &str, v: Value| {
        objects.insert(name.to_string(), v);
    };
    let v = |p: &[Rational]| enc_vector(p);
    let queries = match inst {
        Instance::Pair(p) => {
            put("O1", enc_h(p.o1.hrep()));
            put("O2", enc_h(p.o2.hrep()));
            vec![query("intersection_rule", &["O1", "O2"], &[("point", v(&p.x))])]
        }
        Instance::Sum(s) => {
            put("F1", enc_map_h(&s.f1));
            put("F2", enc_map_h(&s.f2));
            vec![query(
                "coderivative_sum_rule",
                &["F1", "F2"],
                &[("point", v(&join(&s.x, &s.y))), ("y1", v(&s.y1)), ("y2", v(&s.y2)), ("g", v(&s.g))],
            )]
        }
        Instance::Chain(c) => {
            put("F", enc_map_h(&c.f));
            put("G", enc_map_h(&c.g));
            vec![query(
                "coderivative_chain_rule",
                &["F", "G"],
                &[("point", v(&join(&c.x, &c.z))), ("y", v(&c.y)), ("h", v(&c.h))],
            )]
        }
        Instance::FnSum(s) => {
            put("phi1", enc_fn_h(&s.phi1));
            put("phi2", enc_fn_h(&s.phi2));
            vec![query("subdiff_sum_rule", &["phi1", "phi2"], &[("point", v(&s.x))])]
        }
        Instance::FnChain(c) => {
            put("phi", enc_fn_h(&c.phi));
            put("A", enc_lin(&c.a));
            vec![query("subdiff_chain_rule", &["phi", "A"], &[("point", v(&c.x))])]
        }
        Instance::Marginal(m) => {
            put("phi", enc_fn_h(m.problem.phi()));
            put("F", enc_map_h(m.problem.map()));
            vec![query("marginal_subdiff_rule", &["phi", "F"], &[("point", v(&m.x)), ("y", v(&m.y))])]
        }
        Instance::MapPoint(f, x, y) => {
            put("F", enc_map_h(f));
            vec![query("graph_core_check", &["F"], &[("point", v(&join(x, y)))])]
        }
        Instance::Sets(o1, o2) => {
            put("O1", enc_h(o1.hrep()));
            put("O2", enc_h(o2.hrep()));
            let mut qs = vec![
                query("is_extremal", &["O1", "O2"], &[]),
                query("separate_sets", &["O1", "O2"], &[]),
            ];
            if let Some(x) = o1.intersect(o2).ok().and_then(|c| c.any_point()) {
                qs.push(query("extremal_principle", &["O1", "O2"], &[("point", v(&x))]));
            }
            qs
        }
        Instance::SetPoint(omega, x) => {
            put("Omega", enc_h(omega.hrep()));
            vec![
                query("core_contains", &["Omega"], &[("point", v(x))]),
                query("separate_point", &["Omega"], &[("point", v(x))]),
            ]
        }
        Instance::Segment { omega, b, lambda } => {
            put("Omega", enc_h(omega.hrep()));
            let mut qs = vec![query("is_core_solid", &["Omega"], &[])];
            if let Some(a) = is_core_solid(omega) {
                let p = add(&scale(&a, lambda), &scale(b, &(int(1) - lambda)));
                qs.push(query("core_contains", &["Omega"], &[("point", v(&p))]));
            }
            qs
        }
        Instance::Gauge { omega, x, y, t } => {
            put("Omega", enc_h(omega.hrep()));
            [x.clone(), y.clone(), add(x, y), scale(x, t)]
                .iter()
                .map(|p| query("gauge", &["Omega"], &[("point", v(p))]))
                .collect()
        }
        Instance::Normal { omega, x, f, .. } => {
            put("Omega", enc_h(omega.hrep()));
            vec![
                query("normal_cone", &["Omega"], &[("point", v(x))]),
                query("oracle_normal_member", &["Omega"], &[("point", v(x)), ("f", v(f))]),
            ]
        }
        Instance::Subgrad { phi, x, f, .. } => {
            put("phi", enc_fn_h(phi));
            vec![
                query("subdifferential", &["phi"], &[("point", v(x))]),
                query("oracle_subgrad_member", &["phi"], &[("point", v(x)), ("f", v(f))]),
            ]
        }
    };
    ProblemFile {
        version: VERSION.into(),
        objects: objects.into_iter().collect(),
        queries,
    }
}

/// Every H-representation row list in the problem, as JSON pointers.
fn row_lists(p: &ProblemFile) -> Vec<String> {
    let objects = serde_json::to_value(&p.objects).expect("objects serialize");
    p.objects
        .keys()
        .flat_map(|name| {
            let name = name.replace('~', "~0").replace('/', "~1");
            ["", "/graph", "/epi"].map(|inner| format!("/{name}{inner}/ineqs"))
        })
        .filter(|ptr| objects.pointer(ptr).and_then(Value::as_array).is_some())
        .collect()
}

/// Greedily drops inequality rows while `fails` keeps holding.
pub fn minimize(problem: &ProblemFile, fails: impl Fn(&ProblemFile) -> bool) -> ProblemFile {
    let mut best = problem.clone();
    for ptr in row_lists(problem) {
        let mut i = 0;
        loop {
            let mut objects = serde_json::to_value(&best.objects).expect("objects serialize");
            let Some(rows) = objects.pointer_mut(&ptr).and_then(Value::as_array_mut) else { break };
            if i >= rows.len() {
                break;
            }
            rows.remove(i);
            let candidate = ProblemFile {
                objects: serde_json::from_value(objects).expect("objects deserialize"),
                ..best.clone()
            };
            if fails(&candidate) {
                best = candidate;
            } else {
                i += 1;
            }
        }
    }
    best
}

/// A replayed problem file fails when its run reports a violation.
pub fn replay_fails(p: &ProblemFile, opts: &RunOptions) -> bool {
    run_problem(p, opts).exit == Exit::Violation
}

#[derive(Clone, Debug)]
pub struct FuzzOptions {
    pub dimension: usize,
    pub count: usize,
    pub seed: u64,
    pub max_denominator: i64,
    pub out_dir: Option<PathBuf>,
    pub checks: Vec<Check>,
}

impl FuzzOptions {
    pub fn new(dimension: usize, count: usize, seed: u64) -> Self {
        FuzzOptions {
            dimension,
            count,
            seed,
            max_denominator: 3,
            out_dir: None,
            checks: Check::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Row {
    pub name: &'static str,
    pub rule: bool,
    pub instances: usize,
    pub qc_true: usize,
    pub equal_under_qc: usize,
    pub failures: usize,
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub check: Check,
    pub index: u64,
    pub message: String,
    pub file: Option<PathBuf>,
}

#[derive(Clone, Debug, Default)]
pub struct FuzzSummary {
    pub rows: Vec<Row>,
    pub failures: Vec<Failure>,
}

impl FuzzSummary {
    pub fn exit(&self) -> Exit {
        if self.failures.is_empty() {
            Exit::Success
        } else {
            Exit::Violation
        }
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<24} {:>9} {:>8} {:>14} {:>8}",
            "check", "instances", "qc-true", "equal-under-qc", "failures"
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:<24} {:>9} {:>8} {:>14} {:>8}",
                r.name, r.instances, r.qc_true, r.equal_under_qc, r.failures
            );
        }
        for f in &self.failures {
            let _ = write!(s, "FAIL {} #{}: {}", f.check.name(), f.index, f.message);
            if let Some(p) = &f.file {
                let _ = write!(s, " ({})", p.display());
            }
            s.push('\n');
        }
        s
    }
}

/// Generator for instance `index` of `check` in a campaign.
pub fn instance_gen(seed: u64, check: Check, index: u64, max_den: i64) -> Gen {
    Gen::for_instance(seed, (check.tag() << 32) | index, max_den)
}

/// Even indices ask for the qualification condition (or a member).
pub fn wants_qc(index: u64) -> bool {
    index.is_multiple_of(2)
}

fn write_counterexample(dir: &Path, check: Check, index: u64, inst: &Instance) -> CliResult<PathBuf> {
    let replay = RunOptions {
        oracle: true,
        ..Default::default()
    };
    let problem = to_problem(inst);
    let problem = if replay_fails(&problem, &replay) {
        minimize(&problem, |p| replay_fails(p, &replay))
    } else {
        problem
    };
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("counterexample-{}-{index}.json", check.name()));
    std::fs::write(&path, serde_json::to_string_pretty(&problem)? + "\n")?;
    Ok(path)
}

pub fn cmd_fuzz(opts: &FuzzOptions) -> CliResult<FuzzSummary> {
    if !(1..=4).contains(&opts.dimension) {
        return Err(CliError::Input(format!("dimension must be 1..=4, got {}", opts.dimension)));
    }
    let dims = Dims::for_dimension(opts.dimension);
    let jobs: Vec<(Check, u64)> = opts
        .checks
        .iter()
        .flat_map(|c| (0..opts.count as u64).map(move |i| (*c, i)))
        .collect();
    let results: Vec<CliResult<Verdict>> = jobs
        .par_iter()
        .map(|&(check, index)| {
            let mut g = instance_gen(opts.seed, check, index, opts.max_denominator);
            let inst = generate(check, &mut g, dims, wants_qc(index));
            evaluate(&inst).map_err(|e| CliError::Input(format!("{} #{index}: {e}", check.name())))
        })
        .collect();

    let mut summary = FuzzSummary::default();
    if opts.count == 0 {
        return Ok(summary);
    }
    for check in &opts.checks {
        summary.rows.push(Row {
            name: check.name(),
            rule: check.is_rule(),
            ..Default::default()
        });
    }
    for ((check, index), res) in jobs.iter().zip(results) {
        let row = summary.rows.iter_mut().find(|r| r.name == check.name()).expect("row per check");
        row.instances += 1;
        let (verdict, message) = match res {
            Ok(v) => {
                let m = v.failure.clone();
                (Some(v), m)
            }
            Err(e) => (None, Some(e.to_string())),
        };
        if let Some(v) = &verdict {
            if v.hypothesis {
                row.qc_true += 1;
                if v.conclusion {
                    row.equal_under_qc += 1;
                }
            }
        }
        if let Some(message) = message {
            row.failures += 1;
            let file = match &opts.out_dir {
                Some(dir) => {
                    let mut g = instance_gen(opts.seed, *check, *index, opts.max_denominator);
                    let inst = generate(*check, &mut g, dims, wants_qc(*index));
                    Some(write_counterexample(dir, *check, *index, &inst)?)
                }
                None => None,
            };
            summary.failures.push(Failure {
                check: *check,
                index: *index,
                message,
                file,
            });
        }
    }
    Ok(summary)
}
