//! Builder for linear systems over several variable blocks.
//!
//! Used to express sets such as `{(x, y1, y2) : (x, y1) in A, (x, y2) in B}`
//! or normal-cone multiplier systems, and then either project them to a
//! polyhedron or decide a strict-feasibility question by one LP.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{active_rows, HRep, Polyhedron};
use crate::error::{check_dim, Error, Result};
use crate::lp::{LinearProgram, LpOutcome};
use crate::rational::{Point, Rational};

/// Affine expression `sum c_i v_i + constant` over builder variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinExpr {
    pub terms: BTreeMap<usize, Rational>,
    pub constant: Rational,
}

impl LinExpr {
    pub fn var(i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(i, Rational::one());
        LinExpr {
            terms,
            constant: Rational::zero(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        LinExpr {
            terms: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn vars(block: &[usize]) -> Vec<LinExpr> {
        block.iter().map(|&i| LinExpr::var(i)).collect()
    }

    pub fn constants(p: &[Rational]) -> Vec<LinExpr> {
        p.iter().map(|c| LinExpr::constant(c.clone())).collect()
    }

    pub fn add_scaled(&mut self, other: &LinExpr, s: &Rational) {
        if s.is_zero() {
            return;
        }
        for (i, c) in &other.terms {
            let e = self.terms.entry(*i).or_insert_with(Rational::zero);
            *e += c * s;
            if e.is_zero() {
                self.terms.remove(i);
            }
        }
        self.constant += &other.constant * s;
    }

    pub fn plus(&self, other: &LinExpr) -> LinExpr {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn minus(&self, other: &LinExpr) -> LinExpr {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn negated(&self) -> LinExpr {
        let mut out = LinExpr::default();
        out.add_scaled(self, &-Rational::one());
        out
    }

    /// `sum a_i e_i`.
    pub fn combine(a: &[Rational], exprs: &[LinExpr]) -> LinExpr {
        let mut out = LinExpr::default();
        for (ai, e) in a.iter().zip(exprs) {
            out.add_scaled(e, ai);
        }
        out
    }
}

#[derive(Clone, Debug)]
struct Row {
    expr: LinExpr,
    rhs: Rational,
    strict: bool,
}

/// Incrementally built system of (weak or strict) inequalities and equations.
#[derive(Clone, Debug, Default)]
pub struct SystemBuilder {
    nvars: usize,
    ineqs: Vec<Row>,
    eqs: Vec<(LinExpr, Rational)>,
    strict_infeasible: bool,
}

impl SystemBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Allocates `n` fresh variables.
    pub fn block(&mut self, n: usize) -> Vec<usize> {
        let start = self.nvars;
        self.nvars += n;
        (start..start + n).collect()
    }

    pub fn le(&mut self, expr: LinExpr, rhs: Rational) {
        self.push(expr, rhs, false);
    }

    pub fn lt(&mut self, expr: LinExpr, rhs: Rational) {
        self.push(expr, rhs, true);
    }

    pub fn ge(&mut self, expr: LinExpr, rhs: Rational) {
        self.push(expr.negated(), -rhs, false);
    }

    pub fn eq(&mut self, expr: LinExpr, rhs: Rational) {
        let rhs = rhs - &expr.constant;
        let expr = LinExpr {
            terms: expr.terms,
            constant: Rational::zero(),
        };
        self.eqs.push((expr, rhs));
    }

    fn push(&mut self, expr: LinExpr, rhs: Rational, strict: bool) {
        let rhs = rhs - &expr.constant;
        let expr = LinExpr {
            terms: expr.terms,
            constant: Rational::zero(),
        };
        self.ineqs.push(Row { expr, rhs, strict });
    }

    /// Requires `(exprs) in p`.
    pub fn add_polyhedron(&mut self, p: &Polyhedron, exprs: &[LinExpr]) -> Result<()> {
        self.add_rows(p.hrep(), exprs, false)
    }

    /// Requires `(exprs)` to lie in the interior of `p`. A set with an
    /// equation has empty interior, so the strict part becomes infeasible.
    pub fn add_polyhedron_strict(&mut self, p: &Polyhedron, exprs: &[LinExpr]) -> Result<()> {
        if !p.hrep().eqs.is_empty() {
            self.strict_infeasible = true;
        }
        self.add_rows(p.hrep(), exprs, true)
    }

    fn add_rows(&mut self, h: &HRep, exprs: &[LinExpr], strict: bool) -> Result<()> {
        check_dim(h.dim, exprs.len())?;
        for (a, b) in &h.ineqs {
            self.push(LinExpr::combine(a, exprs), b.clone(), strict);
        }
        for (c, d) in &h.eqs {
            self.eq(LinExpr::combine(c, exprs), d.clone());
        }
        Ok(())
    }

    /// Requires `(target)` to lie in the normal cone of `p` at `point`:
    /// `target = sum lambda_k a_k + sum mu_j c_j` over active inequalities
    /// `a_k` (with `lambda >= 0`) and all equation normals `c_j`.
    pub fn add_normal_multipliers(
        &mut self,
        p: &Polyhedron,
        point: &[Rational],
        target: &[LinExpr],
    ) -> Result<()> {
        check_dim(p.dim(), point.len())?;
        check_dim(p.dim(), target.len())?;
        if !p.contains(point)? {
            return Err(Error::PointNotInSet("normal cone base point"));
        }
        let (act, eqs) = active_rows(p.hrep(), point);
        let lam = self.block(act.len());
        let mu = self.block(eqs.len());
        for &l in &lam {
            self.ge(LinExpr::var(l), Rational::zero());
        }
        for (i, t) in target.iter().enumerate() {
            let mut e = t.clone();
            for (k, a) in act.iter().enumerate() {
                e.add_scaled(&LinExpr::var(lam[k]), &-&a[i]);
            }
            for (k, c) in eqs.iter().enumerate() {
                e.add_scaled(&LinExpr::var(mu[k]), &-&c[i]);
            }
            self.eq(e, Rational::zero());
        }
        Ok(())
    }

    fn dense(&self, e: &LinExpr, n: usize) -> Point {
        let mut row = vec![Rational::zero(); n];
        for (i, c) in &e.terms {
            row[*i] = c.clone();
        }
        row
    }

    /// Closure of the system (strict rows taken weakly) projected onto `keep`.
    pub fn project(&self, keep: &[usize]) -> Result<Polyhedron> {
        let n = self.nvars;
        let h = HRep::new(
            n,
            self.ineqs
                .iter()
                .map(|r| (self.dense(&r.expr, n), r.rhs.clone()))
                .collect(),
            self.eqs
                .iter()
                .map(|(e, d)| (self.dense(e, n), d.clone()))
                .collect(),
        );
        Polyhedron::from(h).project(keep)
    }

    /// A point satisfying every weak row and every strict row strictly, if
    /// one exists. Decided by maximizing a common slack `s <= 1` on the
    /// strict rows.
    pub fn strictly_feasible_point(&self) -> Option<Point> {
        if self.strict_infeasible {
            return None;
        }
        let n = self.nvars;
        let s = n;
        let mut lp = LinearProgram::new(n + 1);
        let mut obj = vec![Rational::zero(); n + 1];
        obj[s] = Rational::one();
        lp.maximize(obj);
        for r in &self.ineqs {
            let mut row = self.dense(&r.expr, n + 1);
            if r.strict {
                row[s] = Rational::one();
            }
            lp.le(row, r.rhs.clone());
        }
        for (e, d) in &self.eqs {
            lp.eq(self.dense(e, n + 1), d.clone());
        }
        let mut cap = vec![Rational::zero(); n + 1];
        cap[s] = Rational::one();
        lp.le(cap, Rational::one());
        match lp.solve() {
            LpOutcome::Optimal { point, value } if value.is_positive() => {
                Some(point[..n].to_vec())
            }
            _ => None,
        }
    }

    /// Any point of the (weak) system.
    pub fn feasible_point(&self) -> Option<Point> {
        let n = self.nvars;
        let mut lp = LinearProgram::new(n);
        for r in &self.ineqs {
            lp.le(self.dense(&r.expr, n), r.rhs.clone());
        }
        for (e, d) in &self.eqs {
            lp.eq(self.dense(e, n), d.clone());
        }
        lp.solve().point().cloned()
    }
}
