//! Piecewise-linear convex functions through their epigraphs.
//!
//! Subdifferentials go through the coderivative of the epigraphical map
//! `x => {α : α >= φ(x)}`, whose graph is exactly `epi φ`.

use num_traits::{One, Signed, Zero};

use crate::corealg::is_core_solid;
use crate::error::{check_dim, Error, Result};
use crate::normalcalc::{coderivative, RuleVerdict, SetValuedMap};
use crate::polyhedra::{LinExpr, Polyhedron, SystemBuilder};
use crate::rational::{dot, Extended, Point, Rational};

fn exprs(parts: &[&[LinExpr]]) -> Vec<LinExpr> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

fn join(x: &[Rational], y: &[Rational]) -> Point {
    x.iter().chain(y).cloned().collect()
}

/// A proper convex function `Q^n -> Q ∪ {+inf}` stored as its epigraph in
/// `Q^(n+1)`, with `α` last.
#[derive(Clone, Debug)]
pub struct PolyFunction {
    dim: usize,
    epi: Polyhedron,
}

impl PolyFunction {
    /// Validates an epigraph: nonempty, closed upward in `α`, and bounded
    /// below in `α` (otherwise the function would take the value `-inf`).
    pub fn new(dim: usize, epi: Polyhedron) -> Result<Self> {
        check_dim(dim + 1, epi.dim())?;
        let h = epi.hrep();
        if h.ineqs.iter().any(|(a, _)| a[dim].is_positive())
            || h.eqs.iter().any(|(c, _)| !c[dim].is_zero())
        {
            return Err(Error::Invalid(
                "epigraph must be closed under increasing the last coordinate".into(),
            ));
        }
        if epi.is_empty() {
            return Err(Error::ImproperFunction("empty epigraph"));
        }
        if !h.ineqs.iter().any(|(a, _)| a[dim].is_negative()) {
            return Err(Error::ImproperFunction("function takes the value -inf"));
        }
        Ok(PolyFunction { dim, epi })
    }

    /// `max_i (s_i·x + c_i)` restricted to `domain` (all of `Q^n` if absent).
    pub fn max_affine(
        dim: usize,
        pieces: &[(Point, Rational)],
        domain: Option<&Polyhedron>,
    ) -> Result<Self> {
        let mut ineqs = Vec::new();
        for (s, c) in pieces {
            check_dim(dim, s.len())?;
            let mut row = s.clone();
            row.push(-Rational::one());
            ineqs.push((row, -c));
        }
        let mut epi = Polyhedron::new(dim + 1, ineqs, vec![])?;
        if let Some(d) = domain {
            check_dim(dim, d.dim())?;
            epi = epi.intersect(&d.product(&Polyhedron::universe(1)))?;
        }
        Self::new(dim, epi)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn epi(&self) -> &Polyhedron {
        &self.epi
    }

    pub fn domain(&self) -> Polyhedron {
        if self.dim == 0 {
            return Polyhedron::universe(0);
        }
        let coords: Vec<usize> = (0..self.dim).collect();
        self.epi.project(&coords).expect("valid coordinates")
    }

    /// `min{α : (x, α) ∈ epi φ}` by LP; `+inf` off the domain.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Extended> {
        check_dim(self.dim, x.len())?;
        let fixed: Vec<(usize, Rational)> = x.iter().cloned().enumerate().collect();
        let column = self.epi.slice(&fixed)?;
        Ok(match column.support(&[-Rational::one()])? {
            Extended::Finite(v) => Extended::Finite(-v),
            Extended::NegInfinity => Extended::PosInfinity,
            Extended::PosInfinity => unreachable!("epigraph is bounded below"),
        })
    }

    /// The epigraphical map `x => [φ(x), inf)`.
    pub fn epi_map(&self) -> SetValuedMap {
        SetValuedMap::new(self.dim, 1, self.epi.clone()).expect("dimensions agree")
    }

    fn value_at(&self, x: &[Rational]) -> Result<Rational> {
        match self.evaluate(x)? {
            Extended::Finite(v) => Ok(v),
            _ => Err(Error::NotInDomain),
        }
    }

    pub fn is_epi_core_solid(&self) -> bool {
        is_core_solid(&self.epi).is_some()
    }
}

/// `∂φ(x̄) = D*E(x̄, φ(x̄))(1)` for the epigraphical map `E`.
pub fn subdifferential(phi: &PolyFunction, x: &[Rational]) -> Result<Polyhedron> {
    let v = phi.value_at(x)?;
    coderivative(&phi.epi_map(), x, &[v], &[Rational::one()])
}

/// `φ1 + φ2` via the projection of `{(x, α, α1, α2) : α = α1 + α2}`.
pub fn fn_add(p1: &PolyFunction, p2: &PolyFunction) -> Result<PolyFunction> {
    check_dim(p1.dim, p2.dim)?;
    let n = p1.dim;
    let mut b = SystemBuilder::new();
    let x = b.block(n);
    let a = b.block(1);
    let a1 = b.block(1);
    let a2 = b.block(1);
    let xv = LinExpr::vars(&x);
    b.add_polyhedron(&p1.epi, &exprs(&[&xv, &LinExpr::vars(&a1)]))?;
    b.add_polyhedron(&p2.epi, &exprs(&[&xv, &LinExpr::vars(&a2)]))?;
    b.eq(
        LinExpr::var(a[0]).minus(&LinExpr::var(a1[0])).minus(&LinExpr::var(a2[0])),
        Rational::zero(),
    );
    let keep: Vec<usize> = x.iter().chain(&a).copied().collect();
    let epi = b.project(&keep)?;
    if epi.is_empty() {
        return Err(Error::ImproperFunction("sum has an empty domain"));
    }
    PolyFunction::new(n, epi)
}

/// Subdifferential sum rule at `x̄`. The qualification asks for `(x, α1)`
/// in the interior of `epi φ1` with `x ∈ dom φ2`.
pub fn subdiff_sum_rule(p1: &PolyFunction, p2: &PolyFunction, x: &[Rational]) -> Result<RuleVerdict> {
    check_dim(p1.dim, p2.dim)?;
    check_dim(p1.dim, x.len())?;
    p1.value_at(x)?;
    p2.value_at(x)?;
    let lhs = subdifferential(&fn_add(p1, p2)?, x)?;
    let rhs = subdifferential(p1, x)?.minkowski_sum(&subdifferential(p2, x)?)?;

    let mut b = SystemBuilder::new();
    let xv = LinExpr::vars(&b.block(p1.dim));
    let a1 = LinExpr::vars(&b.block(1));
    let a2 = LinExpr::vars(&b.block(1));
    b.add_polyhedron_strict(&p1.epi, &exprs(&[&xv, &a1]))?;
    b.add_polyhedron(&p2.epi, &exprs(&[&xv, &a2]))?;
    let qc = b.strictly_feasible_point().is_some();
    RuleVerdict::compare(lhs, rhs, qc)
}

/// A rational matrix acting by `x -> A x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: Vec<Point>,
}

impl LinearMap {
    pub fn new(rows: usize, cols: usize, entries: Vec<Point>) -> Result<Self> {
        check_dim(rows, entries.len())?;
        for r in &entries {
            check_dim(cols, r.len())?;
        }
        Ok(LinearMap {
            rows,
            cols,
            entries,
        })
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n).map(|i| crate::rational::unit(n, i)).collect();
        LinearMap {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Point] {
        &self.entries
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Point> {
        check_dim(self.cols, x.len())?;
        Ok(self.entries.iter().map(|r| dot(r, x)).collect())
    }

    /// `A* g`, i.e. the functional `x -> g(A x)`.
    pub fn adjoint(&self, g: &[Rational]) -> Result<Point> {
        check_dim(self.rows, g.len())?;
        Ok((0..self.cols)
            .map(|j| {
                self.entries
                    .iter()
                    .zip(g)
                    .fold(Rational::zero(), |acc, (r, gi)| acc + &r[j] * gi)
            })
            .collect())
    }

    pub fn transpose(&self) -> LinearMap {
        let entries = (0..self.cols)
            .map(|j| self.entries.iter().map(|r| r[j].clone()).collect())
            .collect();
        LinearMap {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }
}

/// `φ∘A` with `epi(φ∘A) = {(x, α) : (A x, α) ∈ epi φ}`.
pub fn fn_precompose(phi: &PolyFunction, a: &LinearMap) -> Result<PolyFunction> {
    check_dim(phi.dim, a.rows)?;
    let (m, n) = (a.rows, a.cols);
    let mut mat: Vec<Point> = a
        .entries
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.push(Rational::zero());
            r
        })
        .collect();
    let mut last = vec![Rational::zero(); n + 1];
    last[n] = Rational::one();
    mat.push(last);
    let epi = phi.epi.affine_preimage(&mat, &vec![Rational::zero(); m + 1])?;
    PolyFunction::new(n, epi)
}

/// `A*(S)` computed on the generators of `S`.
pub fn adjoint_image(a: &LinearMap, s: &Polyhedron) -> Result<Polyhedron> {
    check_dim(a.rows, s.dim())?;
    s.linear_image(&a.transpose().entries)
}

/// Chain rule with a linear inner map at `x̄`. The qualification asks for
/// `(A x, α)` in the interior of `epi φ` for some `(x, α)`.
pub fn subdiff_chain_rule(phi: &PolyFunction, a: &LinearMap, x: &[Rational]) -> Result<RuleVerdict> {
    check_dim(phi.dim, a.rows)?;
    let y = a.apply(x)?;
    phi.value_at(&y)?;
    let lhs = subdifferential(&fn_precompose(phi, a)?, x)?;
    let rhs = adjoint_image(a, &subdifferential(phi, &y)?)?;

    let mut b = SystemBuilder::new();
    let xv = LinExpr::vars(&b.block(a.cols));
    let av = LinExpr::vars(&b.block(1));
    let ax: Vec<LinExpr> = a.entries.iter().map(|r| LinExpr::combine(r, &xv)).collect();
    b.add_polyhedron_strict(&phi.epi, &exprs(&[&ax, &av]))?;
    let qc = b.strictly_feasible_point().is_some();
    RuleVerdict::compare(lhs, rhs, qc)
}

/// `δ_Ω` with epigraph `Ω × [0, inf)`.
pub fn indicator(omega: &Polyhedron) -> Result<PolyFunction> {
    if omega.is_empty() {
        return Err(Error::ImproperFunction("indicator of the empty set"));
    }
    let ray = Polyhedron::new(1, vec![(vec![-Rational::one()], Rational::zero())], vec![])?;
    PolyFunction::new(omega.dim(), omega.product(&ray))
}

/// `μ(x) = inf{φ(x, y) : y ∈ F(x)}` for `φ` on `Q^(n+m)` and `F: Q^n => Q^m`.
#[derive(Clone, Debug)]
pub struct MarginalProblem {
    phi: PolyFunction,
    f: SetValuedMap,
    mu: PolyFunction,
}

impl MarginalProblem {
    /// Builds the problem and the epigraph of `μ`, refusing problems where
    /// `μ` is `-inf` or identically `+inf`.
    pub fn new(phi: PolyFunction, f: SetValuedMap) -> Result<Self> {
        let (n, m) = (f.dim_in(), f.dim_out());
        check_dim(n + m, phi.dim)?;
        let mut b = SystemBuilder::new();
        let x = b.block(n);
        let a = b.block(1);
        let y = b.block(m);
        let (xv, yv, av) = (LinExpr::vars(&x), LinExpr::vars(&y), LinExpr::vars(&a));
        b.add_polyhedron(&phi.epi, &exprs(&[&xv, &yv, &av]))?;
        b.add_polyhedron(f.graph(), &exprs(&[&xv, &yv]))?;
        let keep: Vec<usize> = x.iter().chain(&a).copied().collect();
        let epi = b.project(&keep)?;
        if epi.is_empty() {
            return Err(Error::ImproperFunction("marginal function is identically +inf"));
        }
        if !epi.hrep().ineqs.iter().any(|(r, _)| r[n].is_negative()) {
            return Err(Error::UnboundedBelow);
        }
        let mu = PolyFunction::new(n, epi)?;
        Ok(MarginalProblem { phi, f, mu })
    }

    pub fn phi(&self) -> &PolyFunction {
        &self.phi
    }

    pub fn map(&self) -> &SetValuedMap {
        &self.f
    }
}

pub fn marginal_function(m: &MarginalProblem) -> PolyFunction {
    m.mu.clone()
}

/// `S(x̄) = {y ∈ F(x̄) : φ(x̄, y) <= μ(x̄)}`.
pub fn argmin_set(m: &MarginalProblem, x: &[Rational]) -> Result<Polyhedron> {
    let mu = m.mu.value_at(x)?;
    let mut b = SystemBuilder::new();
    let y = b.block(m.f.dim_out());
    let (xc, yv) = (LinExpr::constants(x), LinExpr::vars(&y));
    b.add_polyhedron(&m.phi.epi, &exprs(&[&xc, &yv, &[LinExpr::constant(mu)]]))?;
    b.add_polyhedron(m.f.graph(), &exprs(&[&xc, &yv]))?;
    let s = b.project(&y)?;
    if s.is_empty() {
        return Err(Error::EmptyArgmin);
    }
    Ok(s)
}

/// Marginal function rule at `x̄` through a minimizer `ȳ`: `∂μ(x̄)` against
/// the projection onto `h` of
/// `{(f, g, u, h) : (f, g) ∈ ∂φ(x̄,ȳ), (u, -g) ∈ N((x̄,ȳ); gph F), h = f + u}`.
pub fn marginal_subdiff_rule(m: &MarginalProblem, x: &[Rational], y: &[Rational]) -> Result<RuleVerdict> {
    let (n, k) = (m.f.dim_in(), m.f.dim_out());
    check_dim(n, x.len())?;
    check_dim(k, y.len())?;
    let mu = m.mu.value_at(x)?;
    let xy = join(x, y);
    if !m.f.contains(x, y)? || m.phi.evaluate(&xy)? != Extended::Finite(mu) {
        return Err(Error::NotAMinimizer);
    }
    let lhs = subdifferential(&m.mu, x)?;

    let dphi = subdifferential(&m.phi, &xy)?;
    let mut b = SystemBuilder::new();
    let fv = LinExpr::vars(&b.block(n));
    let gv = LinExpr::vars(&b.block(k));
    let uv = LinExpr::vars(&b.block(n));
    let h = b.block(n);
    b.add_polyhedron(&dphi, &exprs(&[&fv, &gv]))?;
    let neg_g: Vec<LinExpr> = gv.iter().map(LinExpr::negated).collect();
    b.add_normal_multipliers(m.f.graph(), &xy, &exprs(&[&uv, &neg_g]))?;
    for i in 0..n {
        b.eq(LinExpr::var(h[i]).minus(&fv[i]).minus(&uv[i]), Rational::zero());
    }
    let rhs = b.project(&h)?;

    let (qf, qf1) = marginal_qcs(m)?;
    RuleVerdict::compare(lhs, rhs, qf || qf1)
}

/// The two qualification conditions of the marginal rule: `(x, y, α)`
/// interior to `epi φ` with `(x, y) ∈ gph F`, and `(x, y, α) ∈ epi φ` with
/// `(x, y)` interior to `gph F`.
pub fn marginal_qcs(m: &MarginalProblem) -> Result<(bool, bool)> {
    let (n, k) = (m.f.dim_in(), m.f.dim_out());
    let run = |strict_phi: bool| -> Result<bool> {
        let mut b = SystemBuilder::new();
        let xv = LinExpr::vars(&b.block(n));
        let yv = LinExpr::vars(&b.block(k));
        let av = LinExpr::vars(&b.block(1));
        let epi_args = exprs(&[&xv, &yv, &av]);
        let gph_args = exprs(&[&xv, &yv]);
        if strict_phi {
            b.add_polyhedron_strict(&m.phi.epi, &epi_args)?;
            b.add_polyhedron(m.f.graph(), &gph_args)?;
        } else {
            b.add_polyhedron(&m.phi.epi, &epi_args)?;
            b.add_polyhedron_strict(m.f.graph(), &gph_args)?;
        }
        Ok(b.strictly_feasible_point().is_some())
    };
    Ok((run(true)?, run(false)?))
}
