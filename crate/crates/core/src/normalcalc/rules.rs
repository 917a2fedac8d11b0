use super::cone::{cone_sum, PolyCone};
use super::maps::{coderivative, exprs, join, map_compose, map_sum, SetValuedMap};
use crate::corealg::{core_contains, is_core_solid};
use crate::error::{check_dim, Error, Result};
use crate::polyhedra::{active_rows, LinExpr, Polyhedron, SystemBuilder};
use crate::rational::{add, neg, Rational};

/// Both sides of a calculus rule, its qualification status and the exact
/// comparison.
#[derive(Clone, Debug)]
pub struct RuleVerdict {
    pub lhs: Polyhedron,
    pub rhs: Polyhedron,
    pub qc_satisfied: bool,
    pub equal: bool,
    pub rhs_subset_lhs: bool,
}

impl RuleVerdict {
    pub fn compare(lhs: Polyhedron, rhs: Polyhedron, qc_satisfied: bool) -> Result<Self> {
        let rhs_subset_lhs = rhs.is_subset_of(&lhs)?;
        let equal = rhs_subset_lhs && lhs.is_subset_of(&rhs)?;
        Ok(RuleVerdict {
            lhs,
            rhs,
            qc_satisfied,
            equal,
            rhs_subset_lhs,
        })
    }

    /// A rule is violated when its qualification condition holds but the
    /// sides differ, or when the unconditional inclusion fails.
    pub fn is_violation(&self) -> bool {
        !self.rhs_subset_lhs || (self.qc_satisfied && !self.equal)
    }
}

/// `N(x̄; Ω)`, or `None` when `x̄ ∉ Ω`.
pub fn normal_cone(omega: &Polyhedron, x: &[Rational]) -> Result<Option<PolyCone>> {
    if !omega.contains(x)? {
        return Ok(None);
    }
    let (act, eqs) = active_rows(omega.hrep(), x);
    PolyCone::new(omega.dim(), act, eqs).map(Some)
}

/// `N(x̄; Ω1 ∩ Ω2)` against `N(x̄; Ω1) + N(x̄; Ω2)`, with the qualification
/// `core(Ω1) ∩ Ω2 ≠ ∅`.
pub fn intersection_rule(o1: &Polyhedron, o2: &Polyhedron, x: &[Rational]) -> Result<RuleVerdict> {
    check_dim(o1.dim(), o2.dim())?;
    let both = o1.intersect(o2)?;
    let lhs = normal_cone(&both, x)?.ok_or(Error::PointNotInSet("intersection"))?;
    let n1 = normal_cone(o1, x)?.expect("x lies in both sets");
    let n2 = normal_cone(o2, x)?.expect("x lies in both sets");
    let rhs = cone_sum(&n1, &n2)?;

    let mut b = SystemBuilder::new();
    let v = LinExpr::vars(&b.block(o1.dim()));
    b.add_polyhedron_strict(o1, &v)?;
    b.add_polyhedron(o2, &v)?;
    let qc = b.strictly_feasible_point().is_some();

    RuleVerdict::compare(lhs.to_polyhedron(), rhs.to_polyhedron(), qc)
}

/// Checks the graph core formula at `(x, y)`: returns
/// `((x,y) ∈ core gph F, x ∈ core dom F and y ∈ core F(x))`.
pub fn graph_core_check(f: &SetValuedMap, x: &[Rational], y: &[Rational]) -> Result<(bool, bool)> {
    check_dim(f.dim_in(), x.len())?;
    check_dim(f.dim_out(), y.len())?;
    if is_core_solid(f.graph()).is_none() {
        return Err(Error::NotCoreSolid("graph of the mapping"));
    }
    let lhs = core_contains(f.graph(), &join(x, y))?;
    let rhs = core_contains(&f.domain(), x)? && core_contains(&f.value(x)?, y)?;
    Ok((lhs, rhs))
}

/// Coderivative sum rule at `(x̄,ȳ)` with decomposition `ȳ = ȳ1 + ȳ2`.
/// The qualification asks for `(x, y1)` in the interior of `gph F1` with
/// `x ∈ dom F2`, which also makes `gph F1` core-solid.
pub fn coderivative_sum_rule(
    f1: &SetValuedMap,
    f2: &SetValuedMap,
    x: &[Rational],
    y: &[Rational],
    y1: &[Rational],
    y2: &[Rational],
    g: &[Rational],
) -> Result<RuleVerdict> {
    check_dim(f1.dim_in(), f2.dim_in())?;
    check_dim(f1.dim_out(), f2.dim_out())?;
    check_dim(f1.dim_in(), x.len())?;
    for v in [y, y1, y2, g] {
        check_dim(f1.dim_out(), v.len())?;
    }
    if add(y1, y2) != y || !f1.contains(x, y1)? || !f2.contains(x, y2)? {
        return Err(Error::InvalidDecomposition);
    }
    let sum = map_sum(f1, f2)?;
    let lhs = coderivative(&sum, x, y, g)?;
    let d1 = coderivative(f1, x, y1, g)?;
    let d2 = coderivative(f2, x, y2, g)?;
    let rhs = d1.minkowski_sum(&d2)?;

    let (n, m) = (f1.dim_in(), f1.dim_out());
    let mut b = SystemBuilder::new();
    let xv = LinExpr::vars(&b.block(n));
    let y1v = LinExpr::vars(&b.block(m));
    let y2v = LinExpr::vars(&b.block(m));
    b.add_polyhedron_strict(f1.graph(), &exprs(&[&xv, &y1v]))?;
    b.add_polyhedron(f2.graph(), &exprs(&[&xv, &y2v]))?;
    let qc = b.strictly_feasible_point().is_some();

    RuleVerdict::compare(lhs, rhs, qc)
}

/// Coderivative chain rule for `G∘F` at `(x̄,z̄)` through `ȳ ∈ M(x̄,z̄)`.
///
/// The right side `D*F(x̄,ȳ)(D*G(ȳ,z̄)(h))` is the projection onto `f` of
/// `{(f, g, λ, μ) : (f,-g) ∈ N(gph F), (g,-h) ∈ N(gph G)}` in multiplier form.
pub fn coderivative_chain_rule(
    f: &SetValuedMap,
    g_map: &SetValuedMap,
    x: &[Rational],
    z: &[Rational],
    y: &[Rational],
    h: &[Rational],
) -> Result<RuleVerdict> {
    check_dim(f.dim_out(), g_map.dim_in())?;
    check_dim(f.dim_in(), x.len())?;
    check_dim(f.dim_out(), y.len())?;
    check_dim(g_map.dim_out(), z.len())?;
    check_dim(g_map.dim_out(), h.len())?;
    if !f.contains(x, y)? || !g_map.contains(y, z)? {
        return Err(Error::InvalidIntermediatePoint);
    }
    let comp = map_compose(g_map, f)?;
    let lhs = coderivative(&comp, x, z, h)?;

    let (n, m, p) = (f.dim_in(), f.dim_out(), g_map.dim_out());
    let mut b = SystemBuilder::new();
    let fb = b.block(n);
    let gb = b.block(m);
    let gv = LinExpr::vars(&gb);
    let neg_g: Vec<LinExpr> = gv.iter().map(LinExpr::negated).collect();
    b.add_normal_multipliers(f.graph(), &join(x, y), &exprs(&[&LinExpr::vars(&fb), &neg_g]))?;
    b.add_normal_multipliers(
        g_map.graph(),
        &join(y, z),
        &exprs(&[&gv, &LinExpr::constants(&neg(h))]),
    )?;
    let rhs = b.project(&fb)?;

    let qc_i = {
        let mut b = SystemBuilder::new();
        let xv = LinExpr::vars(&b.block(n));
        let yv = LinExpr::vars(&b.block(m));
        let zv = LinExpr::vars(&b.block(p));
        b.add_polyhedron_strict(f.graph(), &exprs(&[&xv, &yv]))?;
        b.add_polyhedron(g_map.graph(), &exprs(&[&yv, &zv]))?;
        b.strictly_feasible_point().is_some()
    };
    let qc_ii = {
        let mut b = SystemBuilder::new();
        let xv = LinExpr::vars(&b.block(n));
        let yv = LinExpr::vars(&b.block(m));
        let zv = LinExpr::vars(&b.block(p));
        b.add_polyhedron(f.graph(), &exprs(&[&xv, &yv]))?;
        b.add_polyhedron_strict(g_map.graph(), &exprs(&[&yv, &zv]))?;
        b.strictly_feasible_point().is_some()
    };

    RuleVerdict::compare(lhs, rhs, qc_i || qc_ii)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ints};

    fn half_plane(a: &[i64], b: i64) -> Polyhedron {
        Polyhedron::new(a.len(), vec![(ints(a), int(b))], vec![]).unwrap()
    }

    fn map(rows: &[(&[i64], i64)]) -> SetValuedMap {
        let p = Polyhedron::new(
            2,
            rows.iter().map(|(a, b)| (ints(a), int(*b))).collect(),
            vec![],
        )
        .unwrap();
        SetValuedMap::new(1, 1, p).unwrap()
    }

    fn cone_poly(gens: &[&[i64]], lines: &[&[i64]]) -> Polyhedron {
        let dim = gens.iter().chain(lines).next().unwrap().len();
        PolyCone::new(
            dim,
            gens.iter().map(|g| ints(g)).collect(),
            lines.iter().map(|g| ints(g)).collect(),
        )
        .unwrap()
        .to_polyhedron()
    }

    #[test]
    fn normal_cone_examples() {
        let quadrant = half_plane(&[1, 0], 0).intersect(&half_plane(&[0, 1], 0)).unwrap();
        let n = normal_cone(&quadrant, &ints(&[0, 0])).unwrap().unwrap();
        assert!(n.to_polyhedron().set_equal(&cone_poly(&[&[1, 0], &[0, 1]], &[])).unwrap());

        let sq = Polyhedron::boxed(&ints(&[0, 0]), &ints(&[1, 1])).unwrap();
        let n = normal_cone(&sq, &ints(&[1, 1])).unwrap().unwrap();
        assert!(n.to_polyhedron().set_equal(&cone_poly(&[&[1, 0], &[0, 1]], &[])).unwrap());
        let half = crate::rational::frac(1, 2);
        let n = normal_cone(&sq, &[half.clone(), half]).unwrap().unwrap();
        assert!(n.generators.is_empty() && n.lineality.is_empty());
        assert!(normal_cone(&sq, &ints(&[2, 2])).unwrap().is_none());
    }

    #[test]
    fn intersection_rule_examples() {
        let v = intersection_rule(&half_plane(&[1, 0], 0), &half_plane(&[0, 1], 0), &ints(&[0, 0]))
            .unwrap();
        assert!(v.qc_satisfied && v.equal);
        assert!(v.lhs.set_equal(&cone_poly(&[&[1, 0], &[0, 1]], &[])).unwrap());

        let v = intersection_rule(&half_plane(&[0, 1], 0), &half_plane(&[0, -1], 0), &ints(&[0, 0]))
            .unwrap();
        assert!(!v.qc_satisfied && v.equal && v.rhs_subset_lhs);
        assert!(v.rhs.set_equal(&cone_poly(&[], &[&[0, 1]])).unwrap());

        let sq = Polyhedron::boxed(&ints(&[0, 0]), &ints(&[2, 2])).unwrap();
        let v = intersection_rule(&sq, &sq, &ints(&[1, 1])).unwrap();
        assert!(v.equal && v.qc_satisfied);
        assert!(v.lhs.set_equal(&Polyhedron::singleton(ints(&[0, 0]))).unwrap());
    }

    #[test]
    fn graph_core_examples() {
        let f = map(&[(&[1, -1], 0), (&[-1, -1], 0)]);
        assert_eq!(graph_core_check(&f, &ints(&[0]), &ints(&[1])).unwrap(), (true, true));
        assert_eq!(graph_core_check(&f, &ints(&[1]), &ints(&[1])).unwrap(), (false, false));
        assert_eq!(graph_core_check(&f, &ints(&[0]), &ints(&[0])).unwrap(), (false, false));
        let flat = SetValuedMap::zero(1, 1);
        assert!(matches!(
            graph_core_check(&flat, &ints(&[0]), &ints(&[0])),
            Err(Error::NotCoreSolid(_))
        ));
    }

    #[test]
    fn sum_rule_examples() {
        let f1 = map(&[(&[1, -1], 0)]);
        let f2 = map(&[(&[-1, -1], 0)]);
        let z = ints(&[0]);
        let v = coderivative_sum_rule(&f1, &f2, &z, &z, &z, &z, &ints(&[1])).unwrap();
        assert!(v.qc_satisfied && v.equal);
        assert!(v.lhs.set_equal(&Polyhedron::singleton(z.clone())).unwrap());
        let v = coderivative_sum_rule(&f1, &f2, &z, &z, &z, &z, &ints(&[-1])).unwrap();
        assert!(v.equal && v.lhs.is_empty() && v.rhs.is_empty());
        assert_eq!(
            coderivative_sum_rule(&f1, &f2, &z, &z, &ints(&[1]), &ints(&[-1]), &ints(&[1]))
                .unwrap_err(),
            Error::InvalidDecomposition
        );
        let zero = SetValuedMap::zero(1, 1);
        let v = coderivative_sum_rule(&f1, &zero, &z, &ints(&[2]), &ints(&[2]), &z, &ints(&[0]))
            .unwrap();
        assert!(v.equal);
    }

    #[test]
    fn chain_rule_examples() {
        let f = map(&[(&[1, -1], 0)]);
        let z = ints(&[0]);
        let v = coderivative_chain_rule(&f, &f, &z, &z, &z, &ints(&[1])).unwrap();
        assert!(v.qc_satisfied && v.equal);
        assert!(v.lhs.set_equal(&Polyhedron::singleton(ints(&[1]))).unwrap());
        let v = coderivative_chain_rule(&f, &f, &z, &z, &z, &ints(&[-1])).unwrap();
        assert!(v.equal && v.lhs.is_empty());
        let id = SetValuedMap::identity(1);
        let v = coderivative_chain_rule(&f, &id, &z, &ints(&[3]), &ints(&[3]), &ints(&[0])).unwrap();
        assert!(v.equal);
        assert_eq!(
            coderivative_chain_rule(&f, &f, &z, &z, &ints(&[1]), &ints(&[1])).unwrap_err(),
            Error::InvalidIntermediatePoint
        );
    }
}
