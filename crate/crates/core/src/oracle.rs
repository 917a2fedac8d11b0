//! Brute-force definitional checkers.
//!
//! These read only generator lists and raw inequality rows. They share no
//! code with the cone, coderivative or subdifferential machinery, so that a
//! bug there cannot validate itself.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_dim, Error, Result};
use crate::polyhedra::{HRep, Polyhedron, VRep};
use crate::rational::{add, dot, neg, scale, sub, unit, Point, Rational};
use crate::subdiff::PolyFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    NormalMember,
    SubgradMember,
    CoreMember,
    SeparationValid,
    SetEqual,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::NormalMember => "normal_member",
            Claim::SubgradMember => "subgrad_member",
            Claim::CoreMember => "core_member",
            Claim::SeparationValid => "separation_valid",
            Claim::SetEqual => "set_equal",
        }
    }
}

/// Outcome of an oracle check. A failed membership claim carries a point
/// of the set at which the defining inequality fails; a successful core
/// check carries the step `δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub claim: Claim,
    pub verdict: bool,
    pub witness: Option<Point>,
    pub delta: Option<Rational>,
    pub seed: Option<u64>,
}

impl OracleReport {
    fn pass(claim: Claim) -> Self {
        OracleReport {
            claim,
            verdict: true,
            witness: None,
            delta: None,
            seed: None,
        }
    }

    fn fail(claim: Claim, witness: Point) -> Self {
        OracleReport {
            claim,
            verdict: false,
            witness: Some(witness),
            delta: None,
            seed: None,
        }
    }
}

/// `f ∈ N(x̄; Ω)` iff `f(v - x̄) <= 0` at every vertex and `f(r) <= 0` along
/// every ray. A violating ray `r` is reported as the point `x̄ + r`.
pub fn oracle_normal_member(omega: &Polyhedron, x: &[Rational], f: &[Rational]) -> Result<OracleReport> {
    check_dim(omega.dim(), x.len())?;
    check_dim(omega.dim(), f.len())?;
    if !omega.hrep().satisfied_by(x) {
        return Err(Error::PointNotInSet("normal cone base point"));
    }
    let v = omega.vrep();
    for p in lex_sorted(&v.vertices) {
        if dot(f, &sub(p, x)).is_positive() {
            return Ok(OracleReport::fail(Claim::NormalMember, p.clone()));
        }
    }
    for r in lex_sorted(&v.rays) {
        if dot(f, r).is_positive() {
            return Ok(OracleReport::fail(Claim::NormalMember, add(x, r)));
        }
    }
    Ok(OracleReport::pass(Claim::NormalMember))
}

/// Generators in lexicographic order, so the reported first violator
/// does not depend on how the V-rep happened to be enumerated.
fn lex_sorted(vs: &[Vec<Rational>]) -> Vec<&Vec<Rational>> {
    let mut out: Vec<_> = vs.iter().collect();
    out.sort();
    out
}

/// `φ(x̄)` straight from the epigraph rows: `+inf` if a row without `α`
/// fails at `x̄`, else the largest lower bound on `α`.
fn value_from_rows(h: &HRep, n: usize, x: &[Rational]) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    for (a, b) in &h.ineqs {
        let ax = dot(&a[..n], x);
        let c = &a[n];
        if c.is_zero() {
            if ax > *b {
                return None;
            }
        } else {
            // c α <= b - a·x with c < 0
            let lo = (b - ax) / c;
            if best.as_ref().is_none_or(|m| lo > *m) {
                best = Some(lo);
            }
        }
    }
    if h.eqs.iter().any(|(c, d)| dot(&c[..n], x) != *d) {
        return None;
    }
    best
}

/// `f ∈ ∂φ(x̄)` iff `α_v >= φ(x̄) + f(x_v - x̄)` at every epigraph vertex and
/// `α_r >= f(x_r)` along every epigraph ray. The witness is the `x`
/// coordinate where the subgradient inequality fails.
pub fn oracle_subgrad_member(phi: &PolyFunction, x: &[Rational], f: &[Rational]) -> Result<OracleReport> {
    let n = phi.dim();
    check_dim(n, x.len())?;
    check_dim(n, f.len())?;
    let fx = value_from_rows(phi.epi().hrep(), n, x).ok_or(Error::NotInDomain)?;
    let v = phi.epi().vrep();
    for p in lex_sorted(&v.vertices) {
        let (xv, av) = (&p[..n], &p[n]);
        if *av < &fx + dot(f, &sub(xv, x)) {
            return Ok(OracleReport::fail(Claim::SubgradMember, xv.to_vec()));
        }
    }
    for r in lex_sorted(&v.rays) {
        let (xr, ar) = (&r[..n], &r[n]);
        if *ar < dot(f, xr) {
            return Ok(OracleReport::fail(Claim::SubgradMember, add(x, xr)));
        }
    }
    Ok(OracleReport::pass(Claim::SubgradMember))
}

/// Largest `t` (capped at 1) with `x + t d` satisfying the raw rows; zero
/// when an equation moves along `d`.
fn max_step(h: &HRep, x: &[Rational], d: &[Rational]) -> Rational {
    if h.eqs.iter().any(|(c, _)| !dot(c, d).is_zero()) {
        return Rational::zero();
    }
    let mut t = Rational::one();
    for (a, b) in &h.ineqs {
        let ad = dot(a, d);
        if ad.is_positive() {
            let s = (b - dot(a, x)) / ad;
            if s < t {
                t = s;
            }
        }
    }
    if t.is_negative() {
        Rational::zero()
    } else {
        t
    }
}

/// Core membership by the directional definition along `±e_i`: each
/// direction must admit a positive step. Directions are tried in the order
/// `e_1, -e_1, e_2, ...`; the first blocked one is the witness. A point
/// outside `Ω` fails at `e_1`.
pub fn oracle_core_member(omega: &Polyhedron, x: &[Rational]) -> Result<OracleReport> {
    let n = omega.dim();
    check_dim(n, x.len())?;
    let h = omega.hrep();
    if !h.satisfied_by(x) {
        let w = if n == 0 { Vec::new() } else { unit(n, 0) };
        return Ok(OracleReport::fail(Claim::CoreMember, w));
    }
    let mut delta = Rational::one();
    for i in 0..n {
        for d in [unit(n, i), neg(&unit(n, i))] {
            let t = max_step(h, x, &d);
            if t.is_zero() {
                return Ok(OracleReport::fail(Claim::CoreMember, d));
            }
            if t < delta {
                delta = t;
            }
        }
    }
    let mut r = OracleReport::pass(Claim::CoreMember);
    r.delta = Some(delta);
    Ok(r)
}

/// Checks a point-from-set separation claim on generators: `f != 0`,
/// `f(v) <= f(x0)` at vertices, `f(r) <= 0` on rays, and a witness `w ∈ Ω`
/// with `f(w) < f(x0)`.
pub fn oracle_separation_valid(
    omega: &Polyhedron,
    x0: &[Rational],
    f: &[Rational],
    witness: &[Rational],
) -> Result<OracleReport> {
    let n = omega.dim();
    check_dim(n, x0.len())?;
    check_dim(n, f.len())?;
    check_dim(n, witness.len())?;
    let fx0 = dot(f, x0);
    if f.iter().all(Zero::is_zero) {
        return Ok(OracleReport::fail(Claim::SeparationValid, f.to_vec()));
    }
    let v = omega.vrep();
    for p in lex_sorted(&v.vertices) {
        if dot(f, p) > fx0 {
            return Ok(OracleReport::fail(Claim::SeparationValid, p.clone()));
        }
    }
    for r in lex_sorted(&v.rays) {
        if dot(f, r).is_positive() {
            return Ok(OracleReport::fail(Claim::SeparationValid, r.clone()));
        }
    }
    if !omega.hrep().satisfied_by(witness) || dot(f, witness) >= fx0 {
        return Ok(OracleReport::fail(Claim::SeparationValid, witness.to_vec()));
    }
    Ok(OracleReport::pass(Claim::SeparationValid))
}

fn sample_points(v: &VRep, samples: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let mut out = Vec::new();
    if v.is_empty() {
        return out;
    }
    let base = &v.vertices[0];
    out.extend(v.vertices.iter().cloned());
    out.extend(v.rays.iter().map(|r| add(base, r)));
    for _ in 0..samples {
        let weights: Vec<i64> = v.vertices.iter().map(|_| rng.gen_range(0..=8)).collect();
        let total: i64 = weights.iter().sum();
        let mut p = if total == 0 {
            base.clone()
        } else {
            let mut acc = vec![Rational::zero(); v.dim];
            for (w, x) in weights.iter().zip(&v.vertices) {
                acc = add(&acc, &scale(x, &Rational::new(*w, total)));
            }
            acc
        };
        for r in &v.rays {
            let c = Rational::new(rng.gen_range(0..=12), rng.gen_range(1..=4));
            p = add(&p, &scale(r, &c));
        }
        out.push(p);
    }
    out
}

/// Randomized mutual-membership check: generator-based samples of each
/// side are tested against the other side's inequalities. Vertices and
/// `vertex + ray` points are always tried first.
pub fn oracle_rule_equal(lhs: &Polyhedron, rhs: &Polyhedron, samples: usize, seed: u64) -> Result<OracleReport> {
    check_dim(lhs.dim(), rhs.dim())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = OracleReport::pass(Claim::SetEqual);
    for (from, to) in [(lhs, rhs), (rhs, lhs)] {
        for p in sample_points(from.vrep(), samples, &mut rng) {
            if !to.hrep().satisfied_by(&p) {
                report = OracleReport::fail(Claim::SetEqual, p);
                report.seed = Some(seed);
                return Ok(report);
            }
        }
    }
    report.seed = Some(seed);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ints};

    fn square() -> Polyhedron {
        Polyhedron::boxed(&ints(&[0, 0]), &ints(&[1, 1])).unwrap()
    }

    fn abs() -> PolyFunction {
        PolyFunction::max_affine(1, &[(ints(&[1]), int(0)), (ints(&[-1]), int(0))], None).unwrap()
    }

    #[test]
    fn normal_membership() {
        let x = ints(&[1, 1]);
        assert!(oracle_normal_member(&square(), &x, &ints(&[1, 0])).unwrap().verdict);
        assert!(oracle_normal_member(&square(), &x, &ints(&[1, 1])).unwrap().verdict);
        let r = oracle_normal_member(&square(), &x, &ints(&[-1, 0])).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.witness, Some(ints(&[0, 0])));
    }

    #[test]
    fn subgradient_membership() {
        let z = ints(&[0]);
        assert!(oracle_subgrad_member(&abs(), &z, &[frac(1, 2)]).unwrap().verdict);
        let r = oracle_subgrad_member(&abs(), &z, &ints(&[2])).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.witness, Some(ints(&[1])));
        assert!(oracle_subgrad_member(&abs(), &ints(&[2]), &ints(&[1])).unwrap().verdict);
    }

    #[test]
    fn core_membership() {
        let r = oracle_core_member(&square(), &[frac(1, 2), frac(1, 2)]).unwrap();
        assert!(r.verdict);
        assert_eq!(r.delta, Some(frac(1, 2)));
        let r = oracle_core_member(&square(), &[int(0), frac(1, 2)]).unwrap();
        assert_eq!(r.witness, Some(ints(&[-1, 0])));
        let seg = Polyhedron::from_generators(2, vec![ints(&[0, 0]), ints(&[1, 0])], vec![]).unwrap();
        let r = oracle_core_member(&seg, &[frac(1, 2), int(0)]).unwrap();
        assert_eq!(r.witness, Some(ints(&[0, 1])));
    }

    #[test]
    fn randomized_equality() {
        let unit_interval = Polyhedron::boxed(&ints(&[-1]), &ints(&[1])).unwrap();
        let from_v = Polyhedron::from_generators(1, vec![ints(&[-1]), ints(&[1])], vec![]).unwrap();
        assert!(oracle_rule_equal(&unit_interval, &from_v, 20, 1).unwrap().verdict);

        let half = Polyhedron::new(1, vec![(ints(&[-1]), int(0))], vec![]).unwrap();
        let r = oracle_rule_equal(&half, &Polyhedron::universe(1), 20, 1).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.witness, Some(ints(&[-1])));

        let cone = Polyhedron::from_generators(2, vec![ints(&[0, 0])], vec![ints(&[1, 0]), ints(&[0, 1])])
            .unwrap();
        let orthant = Polyhedron::new(2, vec![(ints(&[-1, 0]), int(0)), (ints(&[0, -1]), int(0))], vec![])
            .unwrap();
        assert!(oracle_rule_equal(&cone, &orthant, 20, 9).unwrap().verdict);
    }

    #[test]
    fn separation_check() {
        let w = ints(&[0, 0]);
        assert!(oracle_separation_valid(&square(), &ints(&[2, 0]), &ints(&[1, 0]), &w).unwrap().verdict);
        assert!(!oracle_separation_valid(&square(), &ints(&[2, 0]), &ints(&[0, 1]), &w).unwrap().verdict);
    }
}
