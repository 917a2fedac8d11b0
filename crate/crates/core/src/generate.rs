//! Seeded random instances for property tests and fuzz campaigns.
//!
//! Every generator draws from a [`Gen`] wrapping a ChaCha stream, so an
//! instance is fully determined by `(seed, index)`. Constructions put a
//! known point in the relevant core when a qualification condition is
//! wanted, and deliberately place points on faces, since interior points
//! exercise little of the calculus.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::normalcalc::SetValuedMap;
use crate::polyhedra::{active_rows, Polyhedron};
use crate::rational::{add, dot, scale, sub, Point, Rational};
use crate::subdiff::{argmin_set, marginal_function, LinearMap, MarginalProblem, PolyFunction};

pub struct Gen {
    rng: ChaCha8Rng,
    max_den: i64,
}

impl Gen {
    pub fn new(seed: u64, max_den: i64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_den: max_den.max(1),
        }
    }

    /// Independent stream for instance `index` of campaign `seed`.
    pub fn for_instance(seed: u64, index: u64, max_den: i64) -> Self {
        let mut g = Gen::new(seed, max_den);
        g.rng.set_stream(index);
        g
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn chance(&mut self, num: u32, den: u32) -> bool {
        self.rng.gen_ratio(num, den)
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Rational `p/q` with `|p| <= max_num`, `1 <= q <= max_den`.
    pub fn rational(&mut self, max_num: i64) -> Rational {
        let p = self.rng.gen_range(-max_num..=max_num);
        let q = self.rng.gen_range(1..=self.max_den);
        Rational::new(p, q)
    }

    pub fn positive(&mut self, max_num: i64) -> Rational {
        let p = self.rng.gen_range(1..=max_num.max(1));
        let q = self.rng.gen_range(1..=self.max_den);
        Rational::new(p, q)
    }

    pub fn point(&mut self, n: usize, max_num: i64) -> Point {
        (0..n).map(|_| self.rational(max_num)).collect()
    }

    /// Nonzero integer vector with entries in `[-3, 3]`.
    pub fn normal(&mut self, n: usize) -> Point {
        loop {
            let v: Point = (0..n)
                .map(|_| Rational::from_integer(self.rng.gen_range(-3i64..=3)))
                .collect();
            if v.iter().any(|x| !x.is_zero()) {
                return v;
            }
        }
    }

    /// Full-dimensional polyhedron with `center` in its interior.
    pub fn solid(&mut self, n: usize, center: &[Rational]) -> Polyhedron {
        let rows = self.int(n as i64 + 1, n as i64 + 3) as usize;
        let ineqs = (0..rows)
            .map(|_| {
                let a = self.normal(n);
                let b = dot(&a, center) + self.positive(3);
                (a, b)
            })
            .collect();
        Polyhedron::new(n, ineqs, vec![]).expect("consistent dimensions")
    }

    /// Polyhedron containing `through`: solid, with `through` on the
    /// boundary, or flattened by an equation.
    pub fn containing(&mut self, n: usize, through: &[Rational]) -> Polyhedron {
        let rows = self.int(1, n as i64 + 2) as usize;
        let mut ineqs = Vec::new();
        for _ in 0..rows {
            let a = self.normal(n);
            let slack = if self.chance(1, 3) {
                Rational::zero()
            } else {
                self.positive(3)
            };
            let b = dot(&a, through) + slack;
            ineqs.push((a, b));
        }
        let mut eqs = Vec::new();
        if n > 0 && self.chance(1, 4) {
            let c = self.normal(n);
            let d = dot(&c, through);
            eqs.push((c, d));
        }
        Polyhedron::new(n, ineqs, eqs).expect("consistent dimensions")
    }

    /// A point of a nonempty polyhedron, biased towards faces.
    pub fn pick(&mut self, p: &Polyhedron) -> Point {
        let v = p.vrep();
        assert!(!v.is_empty(), "pick from an empty set");
        let i = self.rng.gen_range(0..v.vertices.len());
        let mut x = v.vertices[i].clone();
        match self.int(0, 3) {
            0 => {}
            1 => {
                let j = self.rng.gen_range(0..v.vertices.len());
                let t = Rational::new(self.int(0, 4), 4);
                x = add(&scale(&x, &t), &scale(&v.vertices[j], &(Rational::one() - &t)));
            }
            _ => {
                for r in &v.rays {
                    if self.chance(1, 2) {
                        let t = Rational::new(self.int(0, 4), 2);
                        x = add(&x, &scale(r, &t));
                    }
                }
            }
        }
        debug_assert!(p.contains(&x).unwrap());
        x
    }

    /// Nonnegative combination of the active normals of `p` at `x` (plus a
    /// signed combination of equation normals); zero when none are active.
    pub fn active_combination(&mut self, p: &Polyhedron, x: &[Rational]) -> Point {
        let (act, eqs) = active_rows(p.hrep(), x);
        let mut f = vec![Rational::zero(); p.dim()];
        for a in &act {
            let w = Rational::from_integer(self.int(0, 3));
            f = add(&f, &scale(a, &w));
        }
        for c in &eqs {
            let w = Rational::from_integer(self.int(-2, 2));
            f = add(&f, &scale(c, &w));
        }
        f
    }
}

pub struct SetPair {
    pub o1: Polyhedron,
    pub o2: Polyhedron,
    pub x: Point,
}

/// Two sets with a common point. With `qc`, the center of the solid `Ω1`
/// lies in `Ω2`; otherwise `Ω2` sits on the far side of a facet of `Ω1`.
pub fn intersection_instance(g: &mut Gen, n: usize, qc: bool) -> SetPair {
    let c = g.point(n, 3);
    let o1 = g.solid(n, &c);
    let o2 = if qc {
        g.containing(n, &c)
    } else {
        beyond_facet(g, &o1)
    };
    let both = o1.intersect(&o2).unwrap();
    let x = g.pick(&both);
    SetPair { o1, o2, x }
}

/// Solid set with a point that is interior, on a face, or outside.
pub fn set_and_point(g: &mut Gen, n: usize) -> (Polyhedron, Point) {
    let c = g.point(n, 3);
    let omega = g.solid(n, &c);
    let x = match g.int(0, 3) {
        0 => c,
        1 => g.pick(&omega),
        _ => {
            let far = g.point(n, 6);
            if g.chance(1, 2) {
                far
            } else {
                // reflect a face point through the center
                let p = g.pick(&omega);
                add(&p, &sub(&p, &c))
            }
        }
    };
    (omega, x)
}

/// Pair of sets whose difference is solid (`Ω1` is solid): overlapping,
/// touching along a facet, or disjoint.
pub fn extremal_instance(g: &mut Gen, n: usize) -> (Polyhedron, Polyhedron) {
    let c = g.point(n, 3);
    let o1 = g.solid(n, &c);
    match g.int(0, 2) {
        0 => {
            let p = g.pick(&o1);
            let o2 = g.containing(n, &p);
            (o1, o2)
        }
        1 => {
            let o2 = beyond_facet(g, &o1);
            (o1, o2)
        }
        _ => {
            let shift: Point = g.point(n, 3).iter().map(|v| v + Rational::from_integer(20)).collect();
            let far = add(&c, &shift);
            let o2 = g.containing(n, &far);
            (o1, o2)
        }
    }
}

/// A set touching `o1` from the outside of one of its facets.
fn beyond_facet(g: &mut Gen, o1: &Polyhedron) -> Polyhedron {
    let n = o1.dim();
    let k = g.rng.gen_range(0..o1.hrep().ineqs.len());
    let (a, b) = o1.hrep().ineqs[k].clone();
    let facet = o1
        .intersect(&Polyhedron::new(n, vec![], vec![(a.clone(), b.clone())]).unwrap())
        .unwrap();
    let p = if facet.is_empty() { g.pick(o1) } else { g.pick(&facet) };
    let beyond = Polyhedron::new(n, vec![(crate::rational::neg(&a), -dot(&a, &p))], vec![]).unwrap();
    beyond.intersect(&g.containing(n, &p)).unwrap()
}

/// Absorbing polyhedron: solid with the origin inside.
pub fn absorbing(g: &mut Gen, n: usize) -> Polyhedron {
    let origin = vec![Rational::zero(); n];
    g.solid(n, &origin)
}

/// Map with a solid graph and a point `(x, y)` on, inside or off it.
pub fn map_and_point(g: &mut Gen, n: usize, m: usize) -> (SetValuedMap, Point, Point) {
    let c = g.point(n + m, 3);
    let graph = g.solid(n + m, &c);
    let p = match g.int(0, 3) {
        0 => c,
        1 | 2 => g.pick(&graph),
        _ => g.point(n + m, 4),
    };
    let f = SetValuedMap::new(n, m, graph).unwrap();
    (f, p[..n].to_vec(), p[n..].to_vec())
}

pub struct SumInstance {
    pub f1: SetValuedMap,
    pub f2: SetValuedMap,
    pub x: Point,
    pub y: Point,
    pub y1: Point,
    pub y2: Point,
    pub g: Point,
}

/// Sum-rule data. With `qc`, `gph F1` is solid around `(c, c1)` and
/// `gph F2` contains `(c, c2)`; otherwise `gph F1` is flattened.
pub fn sum_instance(g: &mut Gen, n: usize, m: usize, qc: bool) -> SumInstance {
    let cx = g.point(n, 3);
    let c1 = g.point(m, 3);
    let c2 = g.point(m, 3);
    let p1: Point = cx.iter().chain(&c1).cloned().collect();
    let p2: Point = cx.iter().chain(&c2).cloned().collect();
    let gph1 = if qc {
        g.solid(n + m, &p1)
    } else {
        flat_through(g, n + m, &p1)
    };
    let gph2 = g.containing(n + m, &p2);
    let total = n + 2 * m;
    let x_pos: Vec<usize> = (0..n).collect();
    let pos1: Vec<usize> = x_pos.iter().copied().chain(n..n + m).collect();
    let pos2: Vec<usize> = x_pos.iter().copied().chain(n + m..total).collect();
    let joint = gph1.lift(total, &pos1).intersect(&gph2.lift(total, &pos2)).unwrap();
    let pt = g.pick(&joint);
    let x = pt[..n].to_vec();
    let y1 = pt[n..n + m].to_vec();
    let y2 = pt[n + m..].to_vec();
    let y = add(&y1, &y2);
    let dir = if g.chance(2, 3) {
        let xy1: Point = x.iter().chain(&y1).cloned().collect();
        let comb = g.active_combination(&gph1, &xy1);
        crate::rational::neg(&comb[n..])
    } else {
        g.point(m, 2)
    };
    SumInstance {
        f1: SetValuedMap::new(n, m, gph1).unwrap(),
        f2: SetValuedMap::new(n, m, gph2).unwrap(),
        x,
        y,
        y1,
        y2,
        g: dir,
    }
}

pub struct ChainInstance {
    pub f: SetValuedMap,
    pub g: SetValuedMap,
    pub x: Point,
    pub y: Point,
    pub z: Point,
    pub h: Point,
}

/// Chain-rule data for `G∘F` with `F: Q^n => Q^m`, `G: Q^m => Q^p`. With
/// `qc`, either `gph F` is solid around `(cx, cy)` and `gph G` contains
/// `(cy, cz)` (condition (i)) or the roles are swapped (condition (ii)).
pub fn chain_instance(g: &mut Gen, n: usize, m: usize, p: usize, qc: bool) -> ChainInstance {
    let cx = g.point(n, 3);
    let cy = g.point(m, 3);
    let cz = g.point(p, 3);
    let pf: Point = cx.iter().chain(&cy).cloned().collect();
    let pg: Point = cy.iter().chain(&cz).cloned().collect();
    let (gf, gg) = if !qc {
        (flat_through(g, n + m, &pf), flat_through(g, m + p, &pg))
    } else if g.chance(1, 2) {
        (g.solid(n + m, &pf), g.containing(m + p, &pg))
    } else {
        (g.containing(n + m, &pf), g.solid(m + p, &pg))
    };
    let total = n + m + p;
    let pos_f: Vec<usize> = (0..n + m).collect();
    let pos_g: Vec<usize> = (n..total).collect();
    let joint = gf.lift(total, &pos_f).intersect(&gg.lift(total, &pos_g)).unwrap();
    let pt = g.pick(&joint);
    let x = pt[..n].to_vec();
    let y = pt[n..n + m].to_vec();
    let z = pt[n + m..].to_vec();
    let h = if g.chance(2, 3) {
        let yz: Point = y.iter().chain(&z).cloned().collect();
        let comb = g.active_combination(&gg, &yz);
        crate::rational::neg(&comb[m..])
    } else {
        g.point(p, 2)
    };
    ChainInstance {
        f: SetValuedMap::new(n, m, gf).unwrap(),
        g: SetValuedMap::new(m, p, gg).unwrap(),
        x,
        y,
        z,
        h,
    }
}

/// Random max-of-affine function on `Q^n`, optionally restricted to a
/// polyhedral domain containing `center`.
pub fn max_affine(g: &mut Gen, n: usize, center: &[Rational], restrict: bool) -> (PolyFunction, Vec<(Point, Rational)>) {
    let k = g.int(1, 3) as usize;
    let pieces: Vec<(Point, Rational)> = (0..k).map(|_| affine_piece(g, n)).collect();
    let dom = if restrict { Some(g.containing(n, center)) } else { None };
    let phi = PolyFunction::max_affine(n, &pieces, dom.as_ref()).expect("domain contains the center");
    (phi, pieces)
}

/// A hyperplane section through `at` of a set containing it.
fn flat_through(g: &mut Gen, n: usize, at: &[Rational]) -> Polyhedron {
    let base = g.containing(n, at);
    let c = g.normal(n);
    let d = dot(&c, at);
    base.intersect(&Polyhedron::new(n, vec![], vec![(c, d)]).unwrap())
        .unwrap()
}

pub struct FnSumInstance {
    pub phi1: PolyFunction,
    pub phi2: PolyFunction,
    pub x: Point,
}

/// Two max-affine functions with a common domain point. With `qc`, `φ1` is
/// finite everywhere, so its epigraph is solid; otherwise `dom φ1` is flat.
pub fn fn_sum_instance(g: &mut Gen, n: usize, qc: bool) -> FnSumInstance {
    let c = g.point(n, 3);
    let (phi1, _) = if qc {
        max_affine(g, n, &c, false)
    } else {
        let k = g.int(1, 3) as usize;
        let pieces: Vec<(Point, Rational)> = (0..k).map(|_| affine_piece(g, n)).collect();
        let dom = flat_through(g, n, &c);
        (PolyFunction::max_affine(n, &pieces, Some(&dom)).unwrap(), pieces)
    };
    let restrict = g.chance(1, 2);
    let (phi2, _) = max_affine(g, n, &c, restrict);
    let common = phi1.domain().intersect(&phi2.domain()).unwrap();
    let x = g.pick(&common);
    FnSumInstance { phi1, phi2, x }
}

pub struct FnChainInstance {
    pub phi: PolyFunction,
    pub a: LinearMap,
    pub x: Point,
}

/// `φ∘A` data with `A: Q^n -> Q^m`. With `qc`, `φ` is finite everywhere;
/// otherwise `dom φ` is a flat set through `A x̄`.
pub fn fn_chain_instance(g: &mut Gen, n: usize, m: usize, qc: bool) -> FnChainInstance {
    let entries: Vec<Point> = (0..m)
        .map(|_| (0..n).map(|_| Rational::from_integer(g.int(-2, 2))).collect())
        .collect();
    let a = LinearMap::new(m, n, entries).unwrap();
    let x = g.point(n, 3);
    let y = a.apply(&x).unwrap();
    let k = g.int(1, 3) as usize;
    let pieces: Vec<(Point, Rational)> = (0..k).map(|_| affine_piece(g, m)).collect();
    let dom = if qc { None } else { Some(flat_through(g, m, &y)) };
    let phi = PolyFunction::max_affine(m, &pieces, dom.as_ref()).unwrap();
    FnChainInstance { phi, a, x }
}

fn affine_piece(g: &mut Gen, n: usize) -> (Point, Rational) {
    let s: Point = (0..n).map(|_| Rational::from_integer(g.int(-2, 2))).collect();
    (s, g.rational(2))
}

pub struct MarginalInstance {
    pub problem: MarginalProblem,
    pub x: Point,
    pub y: Point,
}

/// Marginal problem with `φ(x, y) >= |y_j|` (so `μ > -inf`). With `qc`,
/// either `φ` is finite everywhere (condition (qf)) or `gph F` is solid
/// around a point of `dom φ` (condition (qf1)).
pub fn marginal_instance(g: &mut Gen, n: usize, m: usize, qc: bool) -> MarginalInstance {
    let c = g.point(n + m, 3);
    let k = g.int(1, 2) as usize;
    let mut pieces: Vec<(Point, Rational)> = (0..k).map(|_| affine_piece(g, n + m)).collect();
    for j in 0..m {
        let mut e = vec![Rational::zero(); n + m];
        e[n + j] = Rational::one();
        pieces.push((e.clone(), Rational::zero()));
        pieces.push((crate::rational::neg(&e), Rational::zero()));
    }
    let (dom, gph) = match (qc, g.int(0, 2)) {
        (true, 0) => (None, g.containing(n + m, &c)),
        (true, 1) => (Some(g.containing(n + m, &c)), g.solid(n + m, &c)),
        (true, _) => (Some(g.solid(n + m, &c)), g.containing(n + m, &c)),
        (false, _) => (Some(flat_through(g, n + m, &c)), flat_through(g, n + m, &c)),
    };
    let phi = PolyFunction::max_affine(n + m, &pieces, dom.as_ref()).expect("domain contains the center");
    let f = SetValuedMap::new(n, m, gph).unwrap();
    let problem = MarginalProblem::new(phi, f).expect("bounded below and feasible at the center");
    let x = g.pick(&marginal_function(&problem).domain());
    let y = g.pick(&argmin_set(&problem, &x).expect("x in dom μ"));
    MarginalInstance { problem, x, y }
}

/// Normal-cone membership query with its intended answer. Members are
/// active-normal combinations; non-members add `t (v - x̄)` for a generator
/// direction with `t` large enough that `f(v - x̄) > 0`.
pub fn normal_query(g: &mut Gen, n: usize, member: bool) -> (Polyhedron, Point, Point) {
    loop {
        let c = g.point(n, 3);
        let omega = if g.chance(3, 4) { g.solid(n, &c) } else { g.containing(n, &c) };
        let x = g.pick(&omega);
        let f = g.active_combination(&omega, &x);
        if member {
            return (omega, x, f);
        }
        if let Some(d) = escape_direction(g, &omega, &x) {
            let t = (dot(&f, &d).abs() + Rational::one()) / dot(&d, &d);
            return (omega, x.clone(), add(&f, &scale(&d, &t)));
        }
    }
}

fn escape_direction(g: &mut Gen, omega: &Polyhedron, x: &[Rational]) -> Option<Point> {
    let v = omega.vrep();
    let mut dirs: Vec<Point> = v
        .vertices
        .iter()
        .map(|p| sub(p, x))
        .filter(|d| d.iter().any(|c| !c.is_zero()))
        .collect();
    dirs.extend(v.rays.iter().cloned());
    if dirs.is_empty() {
        return None;
    }
    let i = g.rng.gen_range(0..dirs.len());
    Some(dirs.swap_remove(i))
}

/// Subgradient membership query with its intended answer.
pub fn subgrad_query(g: &mut Gen, n: usize, member: bool) -> (PolyFunction, Point, Point) {
    loop {
        let c = g.point(n, 3);
        let restrict = g.chance(1, 3);
        let (phi, pieces) = max_affine(g, n, &c, restrict);
        let dom = phi.domain();
        let x = g.pick(&dom);
        let val = pieces
            .iter()
            .map(|(s, c0)| dot(s, &x) + c0)
            .max()
            .expect("at least one piece");
        // convex combination of active slopes plus a domain normal
        let active: Vec<&Point> = pieces
            .iter()
            .filter(|(s, c0)| dot(s, &x) + c0 == val)
            .map(|(s, _)| s)
            .collect();
        let w: Vec<i64> = active.iter().map(|_| g.int(1, 3)).collect();
        let total: i64 = w.iter().sum();
        let mut f = vec![Rational::zero(); n];
        for (wi, s) in w.iter().zip(&active) {
            f = add(&f, &scale(s, &Rational::new(*wi, total)));
        }
        f = add(&f, &g.active_combination(&dom, &x));
        if member {
            return (phi, x, f);
        }
        // push along a direction into the domain until the subgradient
        // inequality fails at the far point
        let Some(d) = escape_direction(g, &dom, &x) else { continue };
        let far = add(&x, &d);
        let val_far = pieces
            .iter()
            .map(|(s, c0)| dot(s, &far) + c0)
            .max()
            .unwrap();
        let gap = &val_far - &val - dot(&f, &d);
        let t = (gap.abs() + Rational::one()) / dot(&d, &d);
        return (phi, x, add(&f, &scale(&d, &t)));
    }
}
