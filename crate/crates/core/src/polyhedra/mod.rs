//! Rational polyhedra in dual representation.
//!
//! A [`Polyhedron`] is defined by its inequality/equation system ([`HRep`]),
//! which is the source of truth. The generator form ([`VRep`]) is computed on
//! demand by the double description method and cached.

mod dd;
mod fm;
mod system;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::lp::{LinearProgram, LpOutcome};
use crate::rational::{
    add, dot, is_zero_vec, neg, primitive, primitive_factor, primitive_unsigned, rank, scale,
    zeros, Point, Rational,
};

pub(crate) use dd::cone_generators;
pub use system::{LinExpr, SystemBuilder};

/// Inequalities `a·x <= b` and equations `c·x = d` over `Q^dim`.
///
/// Rows are normalized on construction: the coefficient vector is scaled to
/// a primitive integer vector (sign kept for inequalities, first nonzero
/// positive for equations), zero rows that hold are dropped, duplicates are
/// merged. An infeasible trivial row collapses the system to the canonical
/// empty form `0 <= -1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub dim: usize,
    pub ineqs: Vec<(Point, Rational)>,
    pub eqs: Vec<(Point, Rational)>,
}

impl HRep {
    pub fn new(dim: usize, ineqs: Vec<(Point, Rational)>, eqs: Vec<(Point, Rational)>) -> Self {
        let mut ineq_map: BTreeMap<Point, Rational> = BTreeMap::new();
        let mut order: Vec<Point> = Vec::new();
        let mut infeasible = false;
        for (a, b) in ineqs {
            debug_assert_eq!(a.len(), dim);
            match primitive_factor(&a) {
                None => infeasible |= b.is_negative(),
                Some(s) => {
                    let a = scale(&a, &s);
                    let b = b * s;
                    match ineq_map.get_mut(&a) {
                        Some(old) => {
                            if b < *old {
                                *old = b;
                            }
                        }
                        None => {
                            order.push(a.clone());
                            ineq_map.insert(a, b);
                        }
                    }
                }
            }
        }
        let mut eq_rows: Vec<(Point, Rational)> = Vec::new();
        for (c, d) in eqs {
            debug_assert_eq!(c.len(), dim);
            match primitive_unsigned(&c) {
                None => infeasible |= !d.is_zero(),
                Some(p) => {
                    // p = s c with s = ±factor
                    let idx = c.iter().position(|x| !x.is_zero()).unwrap();
                    let s = &p[idx] / &c[idx];
                    let d = d * s;
                    match eq_rows.iter().find(|(q, _)| *q == p) {
                        Some((_, old)) => infeasible |= *old != d,
                        None => eq_rows.push((p, d)),
                    }
                }
            }
        }
        if infeasible {
            return HRep::empty(dim);
        }
        let ineqs = order
            .into_iter()
            .map(|a| {
                let b = ineq_map[&a].clone();
                (a, b)
            })
            .collect();
        HRep {
            dim,
            ineqs,
            eqs: eq_rows,
        }
    }

    /// The canonical empty system `0·x <= -1`.
    pub fn empty(dim: usize) -> Self {
        HRep {
            dim,
            ineqs: vec![(zeros(dim), -Rational::one())],
            eqs: Vec::new(),
        }
    }

    pub fn universe(dim: usize) -> Self {
        HRep {
            dim,
            ineqs: Vec::new(),
            eqs: Vec::new(),
        }
    }

    pub fn is_trivially_empty(&self) -> bool {
        self.ineqs
            .iter()
            .any(|(a, b)| b.is_negative() && is_zero_vec(a))
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.ineqs.iter().all(|(a, b)| dot(a, x) <= *b)
            && self.eqs.iter().all(|(c, d)| dot(c, x) == *d)
    }

    /// Whether a direction lies in the recession cone of the system.
    pub fn recedes_along(&self, r: &[Rational]) -> bool {
        self.ineqs.iter().all(|(a, _)| !dot(a, r).is_positive())
            && self.eqs.iter().all(|(c, _)| dot(c, r).is_zero())
    }

    fn to_lp(&self) -> LinearProgram {
        let mut lp = LinearProgram::new(self.dim);
        for (a, b) in &self.ineqs {
            lp.le(a.clone(), b.clone());
        }
        for (c, d) in &self.eqs {
            lp.eq(c.clone(), d.clone());
        }
        lp
    }
}

/// Generators: `conv(vertices) + cone(rays)`. Lines are stored as a pair of
/// opposite rays. A nonempty set always has at least one point in
/// `vertices`; no vertices means the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    pub dim: usize,
    pub vertices: Vec<Point>,
    pub rays: Vec<Point>,
}

impl VRep {
    pub fn new(dim: usize, vertices: Vec<Point>, rays: Vec<Point>) -> Self {
        let mut vs: Vec<Point> = Vec::new();
        for v in vertices {
            debug_assert_eq!(v.len(), dim);
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        let mut rs: Vec<Point> = Vec::new();
        for r in rays {
            debug_assert_eq!(r.len(), dim);
            if let Some(p) = primitive(&r) {
                if !rs.contains(&p) {
                    rs.push(p);
                }
            }
        }
        if vs.is_empty() {
            rs.clear();
        }
        VRep {
            dim,
            vertices: vs,
            rays: rs,
        }
    }

    pub fn empty(dim: usize) -> Self {
        VRep {
            dim,
            vertices: Vec::new(),
            rays: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Lines of the set: rays whose opposite is also listed, one per pair.
    pub fn lines(&self) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::new();
        for r in &self.rays {
            if self.rays.contains(&neg(r)) {
                if let Some(l) = primitive_unsigned(r) {
                    if !out.contains(&l) {
                        out.push(l);
                    }
                }
            }
        }
        out
    }

    /// Whether every generator of `self` lies in the set described by `h`.
    pub fn inside(&self, h: &HRep) -> bool {
        self.vertices.iter().all(|v| h.satisfied_by(v))
            && self.rays.iter().all(|r| h.recedes_along(r))
    }
}

/// A convex polyhedron in `Q^n`.
pub struct Polyhedron {
    h: HRep,
    v: OnceLock<VRep>,
}

impl Clone for Polyhedron {
    fn clone(&self) -> Self {
        let v = OnceLock::new();
        if let Some(cached) = self.v.get() {
            let _ = v.set(cached.clone());
        }
        Polyhedron { h: self.h.clone(), v }
    }
}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polyhedron")
            .field("h", &self.h)
            .field("v", &self.v.get())
            .finish()
    }
}

impl From<HRep> for Polyhedron {
    fn from(h: HRep) -> Self {
        Polyhedron {
            h,
            v: OnceLock::new(),
        }
    }
}

impl Polyhedron {
    /// Builds `{x : a·x <= b for (a,b) in ineqs, c·x = d for (c,d) in eqs}`.
    pub fn new(
        dim: usize,
        ineqs: Vec<(Point, Rational)>,
        eqs: Vec<(Point, Rational)>,
    ) -> Result<Self> {
        for (a, _) in ineqs.iter().chain(&eqs) {
            check_dim(dim, a.len())?;
        }
        Ok(HRep::new(dim, ineqs, eqs).into())
    }

    /// Builds `conv(vertices) + cone(rays)`; the facet system is derived.
    pub fn from_vrep(v: VRep) -> Self {
        let h = to_hrep(&v);
        let v = VRep::new(v.dim, v.vertices, v.rays);
        let cell = OnceLock::new();
        let _ = cell.set(v);
        Polyhedron { h, v: cell }
    }

    pub fn from_generators(dim: usize, vertices: Vec<Point>, rays: Vec<Point>) -> Result<Self> {
        for p in vertices.iter().chain(&rays) {
            check_dim(dim, p.len())?;
        }
        Ok(Self::from_vrep(VRep::new(dim, vertices, rays)))
    }

    pub fn universe(dim: usize) -> Self {
        HRep::universe(dim).into()
    }

    pub fn empty(dim: usize) -> Self {
        HRep::empty(dim).into()
    }

    pub fn singleton(p: Point) -> Self {
        let n = p.len();
        let eqs = (0..n)
            .map(|i| (crate::rational::unit(n, i), p[i].clone()))
            .collect();
        HRep::new(n, Vec::new(), eqs).into()
    }

    /// Axis-aligned box `lo <= x <= hi`.
    pub fn boxed(lo: &[Rational], hi: &[Rational]) -> Result<Self> {
        check_dim(lo.len(), hi.len())?;
        let n = lo.len();
        let mut ineqs = Vec::new();
        for i in 0..n {
            let e = crate::rational::unit(n, i);
            ineqs.push((neg(&e), -&lo[i]));
            ineqs.push((e, hi[i].clone()));
        }
        Self::new(n, ineqs, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.h.dim
    }

    pub fn hrep(&self) -> &HRep {
        &self.h
    }

    pub fn vrep(&self) -> &VRep {
        self.v.get_or_init(|| to_vrep(&self.h))
    }

    pub fn is_empty(&self) -> bool {
        if let Some(v) = self.v.get() {
            return v.is_empty();
        }
        if self.h.is_trivially_empty() {
            return true;
        }
        !self.h.to_lp().is_feasible()
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        check_dim(self.dim(), x.len())?;
        Ok(self.h.satisfied_by(x))
    }

    /// Some point of the set, found by LP.
    pub fn any_point(&self) -> Option<Point> {
        self.h.to_lp().solve().point().cloned()
    }

    /// `sup c·x` over the set (`-inf` when empty).
    pub fn support(&self, c: &[Rational]) -> Result<crate::rational::Extended> {
        use crate::rational::Extended;
        check_dim(self.dim(), c.len())?;
        let mut lp = self.h.to_lp();
        lp.maximize(c.to_vec());
        Ok(match lp.solve() {
            LpOutcome::Optimal { value, .. } => Extended::Finite(value),
            LpOutcome::Infeasible => Extended::NegInfinity,
            LpOutcome::Unbounded => Extended::PosInfinity,
        })
    }

    /// Maximizer of `c·x`, if the maximum is attained.
    pub fn argmax(&self, c: &[Rational]) -> Option<Point> {
        let mut lp = self.h.to_lp();
        lp.maximize(c.to_vec());
        lp.solve().point().cloned()
    }

    /// Affine hull dimension; `-1` for the empty set.
    ///
    /// Decided by LP: an inequality is an implicit equality iff its minimum
    /// over the set equals its bound.
    pub fn dimension(&self) -> i64 {
        if self.is_empty() {
            return -1;
        }
        let mut rows: Vec<Point> = self.h.eqs.iter().map(|(c, _)| c.clone()).collect();
        for (a, b) in &self.h.ineqs {
            let mut lp = self.h.to_lp();
            lp.minimize(a.clone());
            if let LpOutcome::Optimal { value, .. } = lp.solve_min() {
                if value == *b {
                    rows.push(a.clone());
                }
            }
        }
        self.dim() as i64 - rank(&rows) as i64
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dimension() == self.dim() as i64
    }

    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron> {
        check_dim(self.dim(), other.dim())?;
        let (p, q) = (self.vrep(), other.vrep());
        if p.is_empty() || q.is_empty() {
            return Ok(Polyhedron::empty(self.dim()));
        }
        let vertices = p
            .vertices
            .iter()
            .flat_map(|a| q.vertices.iter().map(move |b| add(a, b)))
            .collect();
        let rays = p.rays.iter().chain(&q.rays).cloned().collect();
        Ok(Polyhedron::from_vrep(VRep::new(self.dim(), vertices, rays)))
    }

    /// `-P`.
    pub fn negate(&self) -> Polyhedron {
        let h = HRep::new(
            self.dim(),
            self.h.ineqs.iter().map(|(a, b)| (neg(a), b.clone())).collect(),
            self.h.eqs.iter().map(|(c, d)| (neg(c), d.clone())).collect(),
        );
        let out: Polyhedron = h.into();
        if let Some(v) = self.v.get() {
            let _ = out.v.set(VRep::new(
                v.dim,
                v.vertices.iter().map(|x| neg(x)).collect(),
                v.rays.iter().map(|x| neg(x)).collect(),
            ));
        }
        out
    }

    /// `P + t`.
    pub fn translate(&self, t: &[Rational]) -> Result<Polyhedron> {
        check_dim(self.dim(), t.len())?;
        let h = HRep::new(
            self.dim(),
            self.h
                .ineqs
                .iter()
                .map(|(a, b)| (a.clone(), b + dot(a, t)))
                .collect(),
            self.h
                .eqs
                .iter()
                .map(|(c, d)| (c.clone(), d + dot(c, t)))
                .collect(),
        );
        let out: Polyhedron = h.into();
        if let Some(v) = self.v.get() {
            let _ = out.v.set(VRep::new(
                v.dim,
                v.vertices.iter().map(|x| add(x, t)).collect(),
                v.rays.clone(),
            ));
        }
        Ok(out)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        check_dim(self.dim(), other.dim())?;
        let h = HRep::new(
            self.dim(),
            self.h.ineqs.iter().chain(&other.h.ineqs).cloned().collect(),
            self.h.eqs.iter().chain(&other.h.eqs).cloned().collect(),
        );
        Ok(h.into())
    }

    /// `P x Q` with the coordinates of `P` first.
    pub fn product(&self, other: &Polyhedron) -> Polyhedron {
        let (n, m) = (self.dim(), other.dim());
        let left: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..n + m).collect();
        let a = self.lift(n + m, &left);
        let b = other.lift(n + m, &right);
        a.intersect(&b).expect("same ambient dimension")
    }

    /// Embeds the set in `Q^total`, sending coordinate `i` to `positions[i]`;
    /// the other coordinates are unconstrained.
    pub fn lift(&self, total: usize, positions: &[usize]) -> Polyhedron {
        assert_eq!(positions.len(), self.dim());
        let place = |a: &Point| {
            let mut row = zeros(total);
            for (i, &p) in positions.iter().enumerate() {
                row[p] += &a[i];
            }
            row
        };
        HRep::new(
            total,
            self.h.ineqs.iter().map(|(a, b)| (place(a), b.clone())).collect(),
            self.h.eqs.iter().map(|(c, d)| (place(c), d.clone())).collect(),
        )
        .into()
    }

    /// `{x in Q^k : M x + o in P}` where `M` has `dim(P)` rows and `k` columns.
    pub fn affine_preimage(&self, m: &[Point], offset: &[Rational]) -> Result<Polyhedron> {
        check_dim(self.dim(), m.len())?;
        check_dim(self.dim(), offset.len())?;
        let k = m.first().map_or(0, |r| r.len());
        for r in m {
            check_dim(k, r.len())?;
        }
        let pull = |a: &Point| -> Point {
            (0..k)
                .map(|j| {
                    a.iter()
                        .zip(m)
                        .fold(Rational::zero(), |acc, (ai, row)| acc + ai * &row[j])
                })
                .collect()
        };
        Ok(HRep::new(
            k,
            self.h
                .ineqs
                .iter()
                .map(|(a, b)| (pull(a), b - dot(a, offset)))
                .collect(),
            self.h
                .eqs
                .iter()
                .map(|(c, d)| (pull(c), d - dot(c, offset)))
                .collect(),
        )
        .into())
    }

    /// Fixes coordinates `fixed[i].0` to `fixed[i].1`; the result lives on
    /// the remaining coordinates in increasing order.
    pub fn slice(&self, fixed: &[(usize, Rational)]) -> Result<Polyhedron> {
        let n = self.dim();
        for (i, _) in fixed {
            if *i >= n {
                return Err(Error::InvalidIndex { index: *i, dim: n });
            }
        }
        let free: Vec<usize> = (0..n).filter(|j| fixed.iter().all(|(i, _)| i != j)).collect();
        let mut m = vec![zeros(free.len()); n];
        let mut offset = zeros(n);
        for (col, &j) in free.iter().enumerate() {
            m[j][col] = Rational::one();
        }
        for (i, v) in fixed {
            offset[*i] = v.clone();
        }
        self.affine_preimage(&m, &offset)
    }

    /// Image under the linear map `x -> M x` (computed on generators).
    pub fn linear_image(&self, m: &[Point]) -> Result<Polyhedron> {
        for r in m {
            check_dim(self.dim(), r.len())?;
        }
        let k = m.len();
        let v = self.vrep();
        if v.is_empty() {
            return Ok(Polyhedron::empty(k));
        }
        let apply = |x: &Point| -> Point { m.iter().map(|r| dot(r, x)).collect() };
        Ok(Polyhedron::from_vrep(VRep::new(
            k,
            v.vertices.iter().map(apply).collect(),
            v.rays.iter().map(apply).collect(),
        )))
    }

    /// Coordinate projection onto `coords` (0-based, in the given order),
    /// by Fourier–Motzkin elimination of the other coordinates.
    pub fn project(&self, coords: &[usize]) -> Result<Polyhedron> {
        let n = self.dim();
        if coords.is_empty() {
            return Err(Error::Invalid("projection onto no coordinates".into()));
        }
        for &c in coords {
            if c >= n {
                return Err(Error::InvalidIndex { index: c, dim: n });
            }
        }
        let mut seen = coords.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != coords.len() {
            return Err(Error::Invalid("repeated projection coordinate".into()));
        }
        let elim: Vec<usize> = (0..n).filter(|j| !coords.contains(j)).collect();
        let reduced = fm::eliminate(&self.h, &elim);
        // `reduced` is over `seen` (sorted); reorder to `coords`
        let perm: Vec<usize> = coords
            .iter()
            .map(|c| seen.iter().position(|s| s == c).unwrap())
            .collect();
        let reorder = |a: &Point| -> Point { perm.iter().map(|&p| a[p].clone()).collect() };
        Ok(HRep::new(
            coords.len(),
            reduced.ineqs.iter().map(|(a, b)| (reorder(a), b.clone())).collect(),
            reduced.eqs.iter().map(|(c, d)| (reorder(c), d.clone())).collect(),
        )
        .into())
    }

    /// Whether `self ⊆ other`: every generator of `self` satisfies the
    /// system of `other` (rays against its homogenized system).
    pub fn is_subset_of(&self, other: &Polyhedron) -> Result<bool> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.vrep().inside(&other.h))
    }

    /// Exact set equality by mutual containment.
    pub fn set_equal(&self, other: &Polyhedron) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    pub fn scale_by(&self, t: &Rational) -> Polyhedron {
        assert!(t.is_positive());
        HRep::new(
            self.dim(),
            self.h.ineqs.iter().map(|(a, b)| (a.clone(), b * t)).collect(),
            self.h.eqs.iter().map(|(c, d)| (c.clone(), d * t)).collect(),
        )
        .into()
    }
}

/// Vertex/ray enumeration through the homogenized cone
/// `{(x,t) : A x - b t <= 0, C x - d t = 0, t >= 0}`.
fn to_vrep(h: &HRep) -> VRep {
    let n = h.dim;
    if h.is_trivially_empty() {
        return VRep::empty(n);
    }
    let homog = |(a, b): &(Point, Rational)| -> Point {
        let mut r = a.clone();
        r.push(-b);
        r
    };
    let mut ineqs: Vec<Point> = h.ineqs.iter().map(homog).collect();
    let mut t_row = zeros(n + 1);
    t_row[n] = -Rational::one();
    ineqs.push(t_row);
    let eqs: Vec<Point> = h.eqs.iter().map(homog).collect();
    let gens = cone_generators(n + 1, &ineqs, &eqs);
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in &gens.rays {
        let t = &r[n];
        if t.is_positive() {
            vertices.push(r[..n].iter().map(|x| x / t).collect());
        } else {
            rays.push(r[..n].to_vec());
        }
    }
    for l in &gens.lines {
        debug_assert!(l[n].is_zero());
        rays.push(l[..n].to_vec());
        rays.push(neg(&l[..n]));
    }
    VRep::new(n, vertices, rays)
}

/// Facet enumeration: the valid inequalities `(a, b)` form the cone
/// `{(a,b) : a·v - b <= 0 for vertices v, a·r <= 0 for rays r}`; its extreme
/// rays with `a != 0` are the facets and its lines are the equations.
fn to_hrep(v: &VRep) -> HRep {
    let n = v.dim;
    if v.is_empty() {
        return HRep::empty(n);
    }
    let mut rows: Vec<Point> = Vec::new();
    for x in &v.vertices {
        let mut r = x.clone();
        r.push(-Rational::one());
        rows.push(r);
    }
    for d in &v.rays {
        let mut r = d.clone();
        r.push(Rational::zero());
        rows.push(r);
    }
    let gens = cone_generators(n + 1, &rows, &[]);
    let ineqs = gens
        .rays
        .iter()
        .filter(|g| !is_zero_vec(&g[..n]))
        .map(|g| (g[..n].to_vec(), g[n].clone()))
        .collect();
    let eqs = gens
        .lines
        .iter()
        .map(|g| (g[..n].to_vec(), g[n].clone()))
        .collect();
    HRep::new(n, ineqs, eqs)
}

/// Returns the rows of `h` tight at `x`: active inequality normals and all
/// equation normals.
pub(crate) fn active_rows(h: &HRep, x: &[Rational]) -> (Vec<Point>, Vec<Point>) {
    let act = h
        .ineqs
        .iter()
        .filter(|(a, b)| dot(a, x) == *b)
        .map(|(a, _)| a.clone())
        .collect();
    let eqs = h.eqs.iter().map(|(c, _)| c.clone()).collect();
    (act, eqs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ints};

    fn unit_square() -> Polyhedron {
        Polyhedron::boxed(&ints(&[0, 0]), &ints(&[1, 1])).unwrap()
    }

    fn sorted(mut v: Vec<Point>) -> Vec<Point> {
        v.sort();
        v
    }

    #[test]
    fn square_vertices() {
        let v = unit_square().vrep().clone();
        assert_eq!(
            sorted(v.vertices),
            vec![ints(&[0, 0]), ints(&[0, 1]), ints(&[1, 0]), ints(&[1, 1])]
        );
        assert!(v.rays.is_empty());
    }

    #[test]
    fn half_line_vertices() {
        let p = Polyhedron::new(1, vec![(ints(&[-1]), int(0))], vec![]).unwrap();
        let v = p.vrep();
        assert_eq!(v.vertices, vec![ints(&[0])]);
        assert_eq!(v.rays, vec![ints(&[1])]);
    }

    #[test]
    fn degenerate_face_vertices() {
        // x1 <= 0, -x1 <= 0, x2 <= -1
        let p = Polyhedron::new(
            2,
            vec![
                (ints(&[1, 0]), int(0)),
                (ints(&[-1, 0]), int(0)),
                (ints(&[0, 1]), int(-1)),
            ],
            vec![],
        )
        .unwrap();
        let v = p.vrep();
        assert_eq!(v.vertices, vec![ints(&[0, -1])]);
        assert_eq!(v.rays, vec![ints(&[0, -1])]);
    }

    #[test]
    fn simplex_facets() {
        let p = Polyhedron::from_generators(2, vec![ints(&[0, 0]), ints(&[1, 0]), ints(&[0, 1])], vec![])
            .unwrap();
        let expected = Polyhedron::new(
            2,
            vec![
                (ints(&[-1, 0]), int(0)),
                (ints(&[0, -1]), int(0)),
                (ints(&[1, 1]), int(1)),
            ],
            vec![],
        )
        .unwrap();
        let mut got = p.hrep().ineqs.clone();
        got.sort();
        let mut want = expected.hrep().ineqs.clone();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn line_through_origin_gives_one_equation() {
        let p = Polyhedron::from_generators(2, vec![ints(&[0, 0])], vec![ints(&[1, 0]), ints(&[-1, 0])])
            .unwrap();
        assert!(p.hrep().ineqs.is_empty());
        assert_eq!(p.hrep().eqs, vec![(ints(&[0, 1]), int(0))]);
    }

    #[test]
    fn half_line_facets() {
        let p = Polyhedron::from_generators(1, vec![ints(&[0])], vec![ints(&[1])]).unwrap();
        assert_eq!(p.hrep().ineqs, vec![(ints(&[-1]), int(0))]);
        assert!(p.hrep().eqs.is_empty());
    }

    #[test]
    fn membership() {
        let sq = unit_square();
        assert!(sq.contains(&[frac(1, 2), frac(1, 2)]).unwrap());
        assert!(!sq.contains(&ints(&[2, 0])).unwrap());
        let axis = Polyhedron::new(2, vec![], vec![(ints(&[0, 1]), int(0))]).unwrap();
        assert!(axis.contains(&ints(&[3, 0])).unwrap());
        assert_eq!(
            sq.contains(&ints(&[1])),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn dimensions() {
        assert_eq!(unit_square().dimension(), 2);
        let seg = Polyhedron::from_generators(2, vec![ints(&[0, 0]), ints(&[1, 0])], vec![]).unwrap();
        assert_eq!(seg.dimension(), 1);
        let seg_h = Polyhedron::new(
            2,
            vec![
                (ints(&[1, 0]), int(1)),
                (ints(&[-1, 0]), int(0)),
                (ints(&[0, 1]), int(0)),
                (ints(&[0, -1]), int(0)),
            ],
            vec![],
        )
        .unwrap();
        assert_eq!(seg_h.dimension(), 1);
        let empty = Polyhedron::new(
            2,
            vec![(ints(&[1, 0]), int(0)), (ints(&[-1, 0]), int(-1))],
            vec![],
        )
        .unwrap();
        assert_eq!(empty.dimension(), -1);
        assert!(empty.vrep().is_empty());
    }

    #[test]
    fn minkowski_examples() {
        let sq = unit_square();
        let big = Polyhedron::boxed(&ints(&[0, 0]), &ints(&[2, 2])).unwrap();
        assert!(sq.minkowski_sum(&sq).unwrap().set_equal(&big).unwrap());

        let lower = Polyhedron::new(2, vec![(ints(&[0, 1]), int(0))], vec![]).unwrap();
        let upper = Polyhedron::new(2, vec![(ints(&[0, -1]), int(0))], vec![]).unwrap();
        let diff = lower.minkowski_sum(&upper.negate()).unwrap();
        assert!(diff.set_equal(&lower).unwrap());

        let zero = Polyhedron::singleton(ints(&[0, 0]));
        assert!(sq.minkowski_sum(&zero).unwrap().set_equal(&sq).unwrap());
    }

    #[test]
    fn set_algebra() {
        let a = Polyhedron::new(2, vec![(ints(&[1, 0]), int(0))], vec![]).unwrap();
        let b = Polyhedron::new(2, vec![(ints(&[0, 1]), int(0))], vec![]).unwrap();
        let quadrant = Polyhedron::from_generators(2, vec![ints(&[0, 0])], vec![ints(&[-1, 0]), ints(&[0, -1])])
            .unwrap();
        assert!(a.intersect(&b).unwrap().set_equal(&quadrant).unwrap());

        let unit = Polyhedron::boxed(&ints(&[0]), &ints(&[1])).unwrap();
        assert!(unit.product(&unit).set_equal(&unit_square()).unwrap());

        let moved = unit_square().translate(&ints(&[1, 1])).unwrap();
        let target = Polyhedron::boxed(&ints(&[1, 1]), &ints(&[2, 2])).unwrap();
        assert!(moved.set_equal(&target).unwrap());
    }

    #[test]
    fn projections() {
        // y >= x, y <= 1 projected onto x gives x <= 1
        let p = Polyhedron::new(
            2,
            vec![(ints(&[1, -1]), int(0)), (ints(&[0, 1]), int(1))],
            vec![],
        )
        .unwrap();
        let px = p.project(&[0]).unwrap();
        assert_eq!(px.hrep().ineqs, vec![(ints(&[1]), int(1))]);
        assert!(px.hrep().eqs.is_empty());

        let py = unit_square().project(&[1]).unwrap();
        assert!(py
            .set_equal(&Polyhedron::boxed(&ints(&[0]), &ints(&[1])).unwrap())
            .unwrap());

        let anti = Polyhedron::new(2, vec![], vec![(ints(&[1, 1]), int(0))]).unwrap();
        let line = anti.project(&[0]).unwrap();
        assert!(line.hrep().ineqs.is_empty() && line.hrep().eqs.is_empty());

        assert!(matches!(p.project(&[2]), Err(Error::InvalidIndex { .. })));
    }

    #[test]
    fn projection_respects_order() {
        // {(x, y, z): x = 1, y = 2, 0 <= z <= 3} onto (y, x)
        let p = Polyhedron::new(
            3,
            vec![(ints(&[0, 0, 1]), int(3)), (ints(&[0, 0, -1]), int(0))],
            vec![(ints(&[1, 0, 0]), int(1)), (ints(&[0, 1, 0]), int(2))],
        )
        .unwrap();
        let q = p.project(&[1, 0]).unwrap();
        assert!(q.set_equal(&Polyhedron::singleton(ints(&[2, 1]))).unwrap());
    }

    #[test]
    fn set_equality_examples() {
        let from_v = Polyhedron::from_generators(
            2,
            vec![ints(&[0, 0]), ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 1])],
            vec![],
        )
        .unwrap();
        assert!(unit_square().set_equal(&from_v).unwrap());

        let nonneg = Polyhedron::new(1, vec![(ints(&[-1]), int(0))], vec![]).unwrap();
        let shifted = Polyhedron::new(1, vec![(ints(&[-1]), int(1))], vec![]).unwrap();
        assert!(!nonneg.set_equal(&shifted).unwrap());

        let cone = Polyhedron::from_generators(2, vec![ints(&[0, 0])], vec![ints(&[1, 0]), ints(&[0, 1])])
            .unwrap();
        let orthant = Polyhedron::new(
            2,
            vec![(ints(&[-1, 0]), int(0)), (ints(&[0, -1]), int(0))],
            vec![],
        )
        .unwrap();
        assert!(cone.set_equal(&orthant).unwrap());
    }

    #[test]
    fn hrep_normalization() {
        let h = HRep::new(
            2,
            vec![
                (vec![frac(1, 2), frac(1, 3)], int(1)),
                (ints(&[3, 2]), int(5)),
                (ints(&[0, 0]), int(4)),
            ],
            vec![(ints(&[-2, 4]), int(6))],
        );
        assert_eq!(h.ineqs, vec![(ints(&[3, 2]), int(5))]);
        assert_eq!(h.eqs, vec![(ints(&[1, -2]), int(-3))]);
        assert!(HRep::new(1, vec![(ints(&[0]), int(-1))], vec![]).is_trivially_empty());
    }

    #[test]
    fn slicing_and_preimage() {
        // graph of y >= |x| sliced at x = 2
        let g = Polyhedron::new(
            2,
            vec![(ints(&[1, -1]), int(0)), (ints(&[-1, -1]), int(0))],
            vec![],
        )
        .unwrap();
        let s = g.slice(&[(0, int(2))]).unwrap();
        assert!(s
            .set_equal(&Polyhedron::new(1, vec![(ints(&[-1]), int(-2))], vec![]).unwrap())
            .unwrap());
    }
}
