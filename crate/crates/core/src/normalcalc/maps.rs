use crate::error::{check_dim, Error, Result};
use crate::polyhedra::{HRep, LinExpr, Polyhedron, SystemBuilder};
use crate::rational::{int, neg, unit, Point, Rational};

/// Convex set-valued map `F: Q^n => Q^m` given by its graph in `Q^(n+m)`,
/// inputs first.
#[derive(Clone, Debug)]
pub struct SetValuedMap {
    dim_in: usize,
    dim_out: usize,
    graph: Polyhedron,
}

impl SetValuedMap {
    pub fn new(dim_in: usize, dim_out: usize, graph: Polyhedron) -> Result<Self> {
        check_dim(dim_in + dim_out, graph.dim())?;
        Ok(SetValuedMap {
            dim_in,
            dim_out,
            graph,
        })
    }

    /// `x => {x}`.
    pub fn identity(n: usize) -> Self {
        let eqs = (0..n)
            .map(|i| {
                let mut row = unit(2 * n, i);
                row[n + i] = -int(1);
                (row, int(0))
            })
            .collect();
        let graph = HRep::new(2 * n, vec![], eqs).into();
        SetValuedMap {
            dim_in: n,
            dim_out: n,
            graph,
        }
    }

    /// `x => {0}` on all of `Q^n`.
    pub fn zero(dim_in: usize, dim_out: usize) -> Self {
        let total = dim_in + dim_out;
        let eqs = (0..dim_out)
            .map(|j| (unit(total, dim_in + j), int(0)))
            .collect();
        SetValuedMap {
            dim_in,
            dim_out,
            graph: HRep::new(total, vec![], eqs).into(),
        }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn graph(&self) -> &Polyhedron {
        &self.graph
    }

    pub fn domain(&self) -> Polyhedron {
        let coords: Vec<usize> = (0..self.dim_in).collect();
        if coords.is_empty() {
            return Polyhedron::universe(0);
        }
        self.graph.project(&coords).expect("valid coordinates")
    }

    /// `F(x)` as a polyhedron in `Q^m`.
    pub fn value(&self, x: &[Rational]) -> Result<Polyhedron> {
        check_dim(self.dim_in, x.len())?;
        let fixed: Vec<(usize, Rational)> = x.iter().cloned().enumerate().collect();
        self.graph.slice(&fixed)
    }

    pub fn contains(&self, x: &[Rational], y: &[Rational]) -> Result<bool> {
        check_dim(self.dim_in, x.len())?;
        check_dim(self.dim_out, y.len())?;
        self.graph.contains(&join(x, y))
    }
}

pub(crate) fn join(x: &[Rational], y: &[Rational]) -> Point {
    x.iter().chain(y).cloned().collect()
}

pub(crate) fn exprs(parts: &[&[LinExpr]]) -> Vec<LinExpr> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

/// `D*F(x̄,ȳ)(g) = {f : (f, -g) in N((x̄,ȳ); gph F)}`.
pub fn coderivative(
    f_map: &SetValuedMap,
    x: &[Rational],
    y: &[Rational],
    g: &[Rational],
) -> Result<Polyhedron> {
    check_dim(f_map.dim_out, g.len())?;
    if !f_map.contains(x, y)? {
        return Err(Error::PointOffGraph);
    }
    let mut b = SystemBuilder::new();
    let f = b.block(f_map.dim_in);
    let target = exprs(&[&LinExpr::vars(&f), &LinExpr::constants(&neg(g))]);
    b.add_normal_multipliers(&f_map.graph, &join(x, y), &target)?;
    b.project(&f)
}

/// Graph of `F1 + F2`: `{(x, y1 + y2) : y1 in F1(x), y2 in F2(x)}`.
pub fn map_sum(f1: &SetValuedMap, f2: &SetValuedMap) -> Result<SetValuedMap> {
    check_dim(f1.dim_in, f2.dim_in)?;
    check_dim(f1.dim_out, f2.dim_out)?;
    let (n, m) = (f1.dim_in, f1.dim_out);
    let mut b = SystemBuilder::new();
    let x = b.block(n);
    let y = b.block(m);
    let y1 = b.block(m);
    let y2 = b.block(m);
    let (xv, y1v, y2v) = (LinExpr::vars(&x), LinExpr::vars(&y1), LinExpr::vars(&y2));
    b.add_polyhedron(&f1.graph, &exprs(&[&xv, &y1v]))?;
    b.add_polyhedron(&f2.graph, &exprs(&[&xv, &y2v]))?;
    for j in 0..m {
        b.eq(
            LinExpr::var(y[j]).minus(&y1v[j]).minus(&y2v[j]),
            int(0),
        );
    }
    let keep: Vec<usize> = x.iter().chain(&y).copied().collect();
    SetValuedMap::new(n, m, b.project(&keep)?)
}

/// `S(x̄,ȳ) = {(y1, y2) : y1 in F1(x̄), y2 in F2(x̄), y1 + y2 = ȳ}`.
pub fn sum_decompositions(
    f1: &SetValuedMap,
    f2: &SetValuedMap,
    x: &[Rational],
    y: &[Rational],
) -> Result<Polyhedron> {
    check_dim(f1.dim_in, f2.dim_in)?;
    check_dim(f1.dim_out, f2.dim_out)?;
    check_dim(f1.dim_in, x.len())?;
    check_dim(f1.dim_out, y.len())?;
    let m = f1.dim_out;
    let mut b = SystemBuilder::new();
    let y1 = b.block(m);
    let y2 = b.block(m);
    let xc = LinExpr::constants(x);
    let (y1v, y2v) = (LinExpr::vars(&y1), LinExpr::vars(&y2));
    b.add_polyhedron(&f1.graph, &exprs(&[&xc, &y1v]))?;
    b.add_polyhedron(&f2.graph, &exprs(&[&xc, &y2v]))?;
    for j in 0..m {
        b.eq(y1v[j].plus(&y2v[j]), y[j].clone());
    }
    let keep: Vec<usize> = y1.iter().chain(&y2).copied().collect();
    let s = b.project(&keep)?;
    if s.is_empty() {
        return Err(Error::PointOffGraph);
    }
    Ok(s)
}

/// Graph of `G∘F`: eliminates the middle variable from
/// `{(x, y, z) : (x, y) in gph F, (y, z) in gph G}`.
pub fn map_compose(g_map: &SetValuedMap, f_map: &SetValuedMap) -> Result<SetValuedMap> {
    check_dim(f_map.dim_out, g_map.dim_in)?;
    let (n, m, p) = (f_map.dim_in, f_map.dim_out, g_map.dim_out);
    let mut b = SystemBuilder::new();
    let x = b.block(n);
    let z = b.block(p);
    let y = b.block(m);
    let (xv, yv, zv) = (LinExpr::vars(&x), LinExpr::vars(&y), LinExpr::vars(&z));
    b.add_polyhedron(&f_map.graph, &exprs(&[&xv, &yv]))?;
    b.add_polyhedron(&g_map.graph, &exprs(&[&yv, &zv]))?;
    let keep: Vec<usize> = x.iter().chain(&z).copied().collect();
    SetValuedMap::new(n, p, b.project(&keep)?)
}

/// `M(x̄,z̄) = F(x̄) ∩ G⁻¹(z̄)`.
pub fn intermediate_points(
    f_map: &SetValuedMap,
    g_map: &SetValuedMap,
    x: &[Rational],
    z: &[Rational],
) -> Result<Polyhedron> {
    check_dim(f_map.dim_out, g_map.dim_in)?;
    check_dim(f_map.dim_in, x.len())?;
    check_dim(g_map.dim_out, z.len())?;
    let mut b = SystemBuilder::new();
    let y = b.block(f_map.dim_out);
    let yv = LinExpr::vars(&y);
    b.add_polyhedron(&f_map.graph, &exprs(&[&LinExpr::constants(x), &yv]))?;
    b.add_polyhedron(&g_map.graph, &exprs(&[&yv, &LinExpr::constants(z)]))?;
    let m = b.project(&y)?;
    if m.is_empty() {
        return Err(Error::PointOffGraph);
    }
    Ok(m)
}
