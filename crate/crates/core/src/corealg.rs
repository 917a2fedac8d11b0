//! Core membership, gauges, separation and set extremality.
//!
//! In `Q^n` the core of a convex polyhedron is its interior: `x` is a core
//! point iff every inequality is strict at `x` and the system has no
//! equations. All decisions below are exact LPs on that description.

use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::lp::{LinearProgram, LpOutcome};
use crate::normalcalc::{cone_intersect, cone_neg, normal_cone};
use crate::polyhedra::{LinExpr, Polyhedron, SystemBuilder};
use crate::rational::{dot, lex_cmp, primitive, scale, unit, zeros, Extended, Point, Rational};

/// Nonzero `f` with `sup f(Ω1) <= inf f(Ω2)`, plus a pair on which the
/// inequality is strict when the separation is proper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub f: Point,
    pub sup_lhs: Extended,
    pub inf_rhs: Extended,
    pub proper_witnesses: Option<(Point, Point)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalityCertificate {
    pub verdict: bool,
    pub direction: Option<Point>,
    /// Shifts `t` for which `(Ω1 + t x0) ∩ Ω2 = ∅` was checked.
    pub checked_ts: Vec<Rational>,
}

/// Number of halvings covered by extremality certificates.
pub const EXTREMAL_SHIFTS: u32 = 20;

pub fn core_contains(omega: &Polyhedron, x: &[Rational]) -> Result<bool> {
    check_dim(omega.dim(), x.len())?;
    let h = omega.hrep();
    Ok(h.eqs.is_empty() && h.ineqs.iter().all(|(a, b)| dot(a, x) < *b))
}

/// A core point, found by maximizing the smallest slack; `None` when `Ω` is
/// not full-dimensional.
pub fn is_core_solid(omega: &Polyhedron) -> Option<Point> {
    let mut b = SystemBuilder::new();
    let v = LinExpr::vars(&b.block(omega.dim()));
    b.add_polyhedron_strict(omega, &v).expect("matching dimension");
    b.strictly_feasible_point()
}

pub fn is_absorbing(omega: &Polyhedron) -> bool {
    core_contains(omega, &zeros(omega.dim())).expect("matching dimension")
}

/// Minkowski gauge `inf{λ > 0 : x ∈ λΩ}` of an absorbing polyhedron, in
/// closed form `max(0, max_i a_i·x / b_i)`.
pub fn gauge(omega: &Polyhedron, x: &[Rational]) -> Result<Rational> {
    check_dim(omega.dim(), x.len())?;
    if !is_absorbing(omega) {
        return Err(Error::NotAbsorbing);
    }
    Ok(omega
        .hrep()
        .ineqs
        .iter()
        .map(|(a, b)| dot(a, x) / b)
        .fold(Rational::zero(), |m, v| if v > m { v } else { m }))
}

/// Properly separates `x0` from a core-solid `Ω`; `None` iff `x0 ∈ core(Ω)`.
///
/// `f` is the sum of the facet normals violated at `x0`, or of the active
/// ones when none is violated, scaled to a primitive integer vector.
pub fn separate_point(omega: &Polyhedron, x0: &[Rational]) -> Result<Option<SeparationCertificate>> {
    check_dim(omega.dim(), x0.len())?;
    if omega.is_empty() {
        return Err(Error::EmptySet("separated set"));
    }
    let interior = is_core_solid(omega).ok_or(Error::NotCoreSolid("separated set"))?;
    if core_contains(omega, x0)? {
        return Ok(None);
    }
    let f = separating_normal(omega, x0);
    let sup_lhs = omega.support(&f)?;
    let fx0 = dot(&f, x0);
    let witness = minimizer(omega, &f).unwrap_or(interior);
    debug_assert!(dot(&f, &witness) < fx0);
    Ok(Some(SeparationCertificate {
        f,
        sup_lhs,
        inf_rhs: Extended::Finite(fx0),
        proper_witnesses: Some((witness, x0.to_vec())),
    }))
}

fn separating_normal(omega: &Polyhedron, x0: &[Rational]) -> Point {
    let rows = &omega.hrep().ineqs;
    let violated: Vec<&Point> = rows
        .iter()
        .filter(|(a, b)| dot(a, x0) > *b)
        .map(|(a, _)| a)
        .collect();
    let chosen = if violated.is_empty() {
        rows.iter()
            .filter(|(a, b)| dot(a, x0) == *b)
            .map(|(a, _)| a)
            .collect()
    } else {
        violated
    };
    let mut f = zeros(omega.dim());
    for a in chosen {
        f = crate::rational::add(&f, a);
    }
    primitive(&f).expect("separating normal of a full-dimensional set is nonzero")
}

/// Lexicographically smallest minimizer of `f` over `Ω`, as far as each
/// successive coordinate is bounded below.
fn minimizer(omega: &Polyhedron, f: &[Rational]) -> Option<Point> {
    let n = omega.dim();
    let mut lp = LinearProgram::new(n);
    for (a, b) in &omega.hrep().ineqs {
        lp.le(a.clone(), b.clone());
    }
    for (c, d) in &omega.hrep().eqs {
        lp.eq(c.clone(), d.clone());
    }
    lp.minimize(f.to_vec());
    let LpOutcome::Optimal { mut point, value } = lp.solve_min() else {
        return None;
    };
    lp.eq(f.to_vec(), value);
    for i in 0..n {
        lp.minimize(unit(n, i));
        match lp.solve_min() {
            LpOutcome::Optimal { point: p, value } => {
                point = p;
                lp.eq(unit(n, i), value);
            }
            _ => break,
        }
    }
    Some(point)
}

/// `Ω1 - Ω2`.
pub fn difference(o1: &Polyhedron, o2: &Polyhedron) -> Result<Polyhedron> {
    o1.minkowski_sum(&o2.negate())
}

/// Separates two sets through `0` versus `Ω1 - Ω2`; `None` iff
/// `0 ∈ core(Ω1 - Ω2)`.
pub fn separate_sets(o1: &Polyhedron, o2: &Polyhedron) -> Result<Option<SeparationCertificate>> {
    check_dim(o1.dim(), o2.dim())?;
    if o1.is_empty() || o2.is_empty() {
        return Err(Error::EmptySet("separated set"));
    }
    let diff = difference(o1, o2)?;
    if is_core_solid(&diff).is_none() {
        return Err(Error::NotCoreSolid("difference of the sets"));
    }
    let Some(cert) = separate_point(&diff, &zeros(o1.dim()))? else {
        return Ok(None);
    };
    // f(x1 - x2) <= 0 on the difference, so sup f(Ω1) <= inf f(Ω2)
    let f = cert.f;
    let sup_lhs = o1.support(&f)?;
    let inf_rhs = match o2.support(&crate::rational::neg(&f))? {
        Extended::Finite(v) => Extended::Finite(-v),
        Extended::PosInfinity => Extended::NegInfinity,
        Extended::NegInfinity => Extended::PosInfinity,
    };
    Ok(Some(SeparationCertificate {
        proper_witnesses: strict_pair(o1, o2, &f),
        f,
        sup_lhs,
        inf_rhs,
    }))
}

/// `(x1, x2) ∈ Ω1 × Ω2` with `f(x1) < f(x2)`.
fn strict_pair(o1: &Polyhedron, o2: &Polyhedron, f: &[Rational]) -> Option<(Point, Point)> {
    let n = o1.dim();
    let mut b = SystemBuilder::new();
    let x1 = b.block(n);
    let x2 = b.block(n);
    let (v1, v2) = (LinExpr::vars(&x1), LinExpr::vars(&x2));
    b.add_polyhedron(o1, &v1).ok()?;
    b.add_polyhedron(o2, &v2).ok()?;
    let gap = LinExpr::combine(f, &v1).minus(&LinExpr::combine(f, &v2));
    b.lt(gap, Rational::zero());
    let p = b.strictly_feasible_point()?;
    Some((p[..n].to_vec(), p[n..].to_vec()))
}

/// Decides extremality of `{Ω1, Ω2}` by `0 ∉ core(Ω1 - Ω2)` and, when
/// extremal, certifies `(Ω1 + t x0) ∩ Ω2 = ∅` for `t = -1/2^k`.
///
/// `(Ω1 + t x0)` meets `Ω2` iff `-t x0 ∈ Ω1 - Ω2`, so `x0` is taken as a
/// normal `a` of a row `a·d <= b` of the difference with `b <= 0`.
pub fn is_extremal(o1: &Polyhedron, o2: &Polyhedron) -> Result<ExtremalityCertificate> {
    check_dim(o1.dim(), o2.dim())?;
    if o1.is_empty() || o2.is_empty() {
        return Err(Error::EmptySet("extremal system"));
    }
    let diff = difference(o1, o2)?;
    let origin = zeros(o1.dim());
    if core_contains(&diff, &origin)? {
        return Ok(ExtremalityCertificate {
            verdict: false,
            direction: None,
            checked_ts: Vec::new(),
        });
    }
    let h = diff.hrep();
    let mut candidates: Vec<Point> = h
        .ineqs
        .iter()
        .filter(|(_, b)| !b.is_positive())
        .map(|(a, _)| a.clone())
        .collect();
    for (c, d) in &h.eqs {
        candidates.push(if d.is_positive() {
            crate::rational::neg(c)
        } else {
            c.clone()
        });
    }
    candidates.sort_by(|a, b| lex_cmp(a, b));
    let x0 = candidates
        .into_iter()
        .next()
        .expect("0 outside the core of a difference lies on or beyond some row");

    let mut checked_ts = Vec::new();
    let mut t = -Rational::one();
    let half = Rational::new(1, 2);
    for _ in 0..=EXTREMAL_SHIFTS {
        let shifted = o1.translate(&scale(&x0, &t))?;
        if shifted.intersect(o2)?.is_empty() {
            checked_ts.push(t.clone());
        }
        t *= &half;
    }
    Ok(ExtremalityCertificate {
        verdict: true,
        direction: Some(x0),
        checked_ts,
    })
}

/// Nonzero `f ∈ N(x̄;Ω1) ∩ (-N(x̄;Ω2))`, or `None` when the intersection is
/// trivial.
pub fn extremal_principle(o1: &Polyhedron, o2: &Polyhedron, x: &[Rational]) -> Result<Option<Point>> {
    check_dim(o1.dim(), o2.dim())?;
    check_dim(o1.dim(), x.len())?;
    let n1 = normal_cone(o1, x)?.ok_or(Error::PointNotInSet("first set"))?;
    let n2 = normal_cone(o2, x)?.ok_or(Error::PointNotInSet("second set"))?;
    if is_core_solid(&difference(o1, o2)?).is_none() {
        return Err(Error::NotCoreSolid("difference of the sets"));
    }
    let common = cone_intersect(&n1, &cone_neg(&n2))?;
    Ok(common
        .generators
        .into_iter()
        .chain(common.lineality)
        .next())
}
