//! Exact rational linear programming.
//!
//! A dense two-phase tableau simplex using Bland's rule for both the entering
//! and the leaving variable, which guarantees termination under degeneracy.
//! All variables are free; they are split internally into positive and
//! negative parts.

use num_traits::{One, Signed, Zero};

use crate::rational::{Point, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: Point, value: Rational },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn point(&self) -> Option<&Point> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

/// `maximize c·x` subject to `a·x <= b` rows and `a·x = b` rows, `x` free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    nvars: usize,
    objective: Point,
    ineqs: Vec<(Point, Rational)>,
    eqs: Vec<(Point, Rational)>,
}

impl LinearProgram {
    pub fn new(nvars: usize) -> Self {
        Self {
            nvars,
            objective: vec![Rational::zero(); nvars],
            ineqs: Vec::new(),
            eqs: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn maximize(&mut self, c: Point) -> &mut Self {
        assert_eq!(c.len(), self.nvars);
        self.objective = c;
        self
    }

    pub fn minimize(&mut self, c: Point) -> &mut Self {
        assert_eq!(c.len(), self.nvars);
        self.objective = c.into_iter().map(|x| -x).collect();
        self
    }

    pub fn le(&mut self, a: Point, b: Rational) -> &mut Self {
        assert_eq!(a.len(), self.nvars);
        self.ineqs.push((a, b));
        self
    }

    pub fn ge(&mut self, a: Point, b: Rational) -> &mut Self {
        self.le(a.into_iter().map(|x| -x).collect(), -b)
    }

    pub fn eq(&mut self, a: Point, b: Rational) -> &mut Self {
        assert_eq!(a.len(), self.nvars);
        self.eqs.push((a, b));
        self
    }

    /// Solves the program as a maximization.
    pub fn solve(&self) -> LpOutcome {
        Simplex::build(self).run(&self.objective)
    }

    /// For a program set up via [`minimize`], reports the minimum rather
    /// than its negation.
    ///
    /// [`minimize`]: LinearProgram::minimize
    pub fn solve_min(&self) -> LpOutcome {
        match self.solve() {
            LpOutcome::Optimal { point, value } => LpOutcome::Optimal { point, value: -value },
            other => other,
        }
    }

    pub fn is_feasible(&self) -> bool {
        let mut p = self.clone();
        p.objective = vec![Rational::zero(); self.nvars];
        p.solve().is_feasible()
    }
}

struct Simplex {
    /// Constraint rows over columns `[x+ | x- | slacks | artificials]`.
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    nvars: usize,
    ncols: usize,
    first_artificial: usize,
}

impl Simplex {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.nvars;
        let m_ineq = lp.ineqs.len();
        let all: Vec<(&(Point, Rational), bool)> = lp
            .ineqs
            .iter()
            .map(|r| (r, true))
            .chain(lp.eqs.iter().map(|r| (r, false)))
            .collect();
        // a slack starts in the basis when its row has b >= 0; every other
        // row gets an artificial
        let needs_artificial: Vec<bool> = all
            .iter()
            .map(|((_, b), is_ineq)| !is_ineq || b.is_negative())
            .collect();
        let first_artificial = 2 * n + m_ineq;
        let ncols = first_artificial + needs_artificial.iter().filter(|&&x| x).count();
        let mut rows = Vec::with_capacity(all.len());
        let mut rhs = Vec::with_capacity(all.len());
        let mut basis = Vec::with_capacity(all.len());
        let mut next_artificial = first_artificial;
        for (i, ((a, b), is_ineq)) in all.into_iter().enumerate() {
            let mut row = vec![Rational::zero(); ncols];
            for (j, aj) in a.iter().enumerate() {
                row[j] = aj.clone();
                row[n + j] = -aj;
            }
            if is_ineq {
                row[2 * n + i] = Rational::one();
            }
            let mut b = b.clone();
            if b.is_negative() {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
                b = -b;
            }
            if needs_artificial[i] {
                row[next_artificial] = Rational::one();
                basis.push(next_artificial);
                next_artificial += 1;
            } else {
                basis.push(2 * n + i);
            }
            rows.push(row);
            rhs.push(b);
        }
        Simplex {
            rows,
            rhs,
            basis,
            nvars: n,
            ncols,
            first_artificial,
        }
    }

    fn pivot(&mut self, r: usize, c: usize, reduced: &mut [Rational], value: &mut Rational) {
        let inv = Rational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !reduced[c].is_zero() {
            let f = reduced[c].clone();
            for (x, p) in reduced.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            *value += &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Reduced costs `c_j - c_B B^{-1} A_j` and the current objective value.
    fn reduced_costs(&self, cost: &[Rational]) -> (Vec<Rational>, Rational) {
        let mut d = cost.to_vec();
        let mut value = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (x, a) in d.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *x -= cb * a;
                }
            }
            value += cb * &self.rhs[i];
        }
        (d, value)
    }

    /// Maximizes over the columns flagged in `allowed`. Returns false when
    /// the objective is unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        let (mut reduced, mut value) = self.reduced_costs(cost);
        loop {
            let Some(c) = (0..self.ncols).find(|&j| allowed[j] && reduced[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c, &mut reduced, &mut value);
        }
    }

    fn phase_one(&mut self) {
        let mut cost = vec![Rational::zero(); self.ncols];
        for c in cost.iter_mut().skip(self.first_artificial) {
            *c = -Rational::one();
        }
        let everything = vec![true; self.ncols];
        self.optimize(&cost, &everything);
    }

    /// Drives zero-level artificials out of the basis, dropping the rows
    /// that turn out to be redundant.
    fn drop_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.first_artificial {
                i += 1;
                continue;
            }
            match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                Some(c) => {
                    let mut dummy = vec![Rational::zero(); self.ncols];
                    let mut v = Rational::zero();
                    self.pivot(i, c, &mut dummy, &mut v);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.rhs.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }

    fn run(mut self, objective: &[Rational]) -> LpOutcome {
        let n = self.nvars;
        // phase 1: maximize -(sum of artificials)
        if self.ncols > self.first_artificial {
            self.phase_one();
            let stuck = self
                .basis
                .iter()
                .zip(&self.rhs)
                .any(|(&b, v)| b >= self.first_artificial && v.is_positive());
            if stuck {
                return LpOutcome::Infeasible;
            }
            self.drop_artificials();
        }
        // phase 2
        let mut cost2 = vec![Rational::zero(); self.ncols];
        for (j, c) in objective.iter().enumerate() {
            cost2[j] = c.clone();
            cost2[n + j] = -c;
        }
        let allowed: Vec<bool> = (0..self.ncols).map(|j| j < self.first_artificial).collect();
        if !self.optimize(&cost2, &allowed) {
            return LpOutcome::Unbounded;
        }
        let mut z = vec![Rational::zero(); self.ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            z[b] = self.rhs[i].clone();
        }
        let point: Point = (0..n).map(|j| &z[j] - &z[n + j]).collect();
        let value = crate::rational::dot(objective, &point);
        LpOutcome::Optimal { point, value }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ints};

    #[test]
    fn textbook_maximum() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3, x,y >= 0
        let mut lp = LinearProgram::new(2);
        lp.maximize(ints(&[3, 2]))
            .le(ints(&[1, 1]), int(4))
            .le(ints(&[1, 3]), int(6))
            .le(ints(&[1, 0]), int(3))
            .ge(ints(&[1, 0]), int(0))
            .ge(ints(&[0, 1]), int(0));
        let out = lp.solve();
        assert_eq!(out.value(), Some(&int(11)));
        assert_eq!(out.point(), Some(&ints(&[3, 1])));
    }

    #[test]
    fn free_variables_and_equalities() {
        // min x subject to x + y = -5/2, y <= 1
        let mut lp = LinearProgram::new(2);
        lp.minimize(ints(&[1, 0]))
            .eq(ints(&[1, 1]), frac(-5, 2))
            .le(ints(&[0, 1]), int(1));
        let out = lp.solve_min();
        assert_eq!(out.value(), Some(&frac(-7, 2)));
        let mut lp = LinearProgram::new(2);
        lp.maximize(ints(&[1, 0]))
            .eq(ints(&[1, 1]), frac(-5, 2))
            .le(ints(&[0, 1]), int(1));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
        let mut lp = LinearProgram::new(2);
        lp.maximize(ints(&[1, 0]))
            .eq(ints(&[1, 1]), frac(-5, 2))
            .ge(ints(&[0, 1]), int(1));
        assert_eq!(lp.solve().value(), Some(&frac(-7, 2)));
    }

    #[test]
    fn infeasible_system() {
        let mut lp = LinearProgram::new(1);
        lp.le(ints(&[1]), int(0)).ge(ints(&[1]), int(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
        assert!(!lp.is_feasible());
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LinearProgram::new(2);
        lp.maximize(ints(&[1, 1]))
            .eq(ints(&[1, -1]), int(0))
            .eq(ints(&[2, -2]), int(0))
            .le(ints(&[1, 0]), int(2));
        assert_eq!(lp.solve().value(), Some(&int(4)));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's classic cycling instance; Bland's rule must terminate.
        let mut lp = LinearProgram::new(4);
        lp.maximize(vec![frac(3, 4), int(-150), frac(1, 50), int(-6)])
            .le(vec![frac(1, 4), int(-60), frac(-1, 25), int(9)], int(0))
            .le(vec![frac(1, 2), int(-90), frac(-1, 50), int(3)], int(0))
            .le(ints(&[0, 0, 1, 0]), int(1));
        for i in 0..4 {
            let mut e = ints(&[0, 0, 0, 0]);
            e[i] = int(1);
            lp.ge(e, int(0));
        }
        assert_eq!(lp.solve().value(), Some(&frac(1, 20)));
    }

    #[test]
    fn empty_program_is_feasible() {
        let lp = LinearProgram::new(3);
        assert_eq!(lp.solve().value(), Some(&int(0)));
    }
}
