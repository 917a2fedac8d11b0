//! Double description method.
//!
//! Computes a minimal generating system (extreme rays plus a basis of the
//! lineality space) of a polyhedral cone `{y : A y <= 0, E y = 0}`. The cone
//! starts as the whole space spanned by unit lines and is cut by one
//! constraint at a time. New rays are only formed from adjacent pairs, using
//! the combinatorial adjacency test on zero sets.

use num_traits::{Signed, Zero};

use crate::rational::{dot, primitive, primitive_unsigned, scale, sub, unit, Point, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct ConeGenerators {
    pub rays: Vec<Point>,
    pub lines: Vec<Point>,
}

#[derive(Clone, Debug)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn with_capacity(bits: usize) -> Self {
        ZeroSet(vec![0; bits.div_ceil(64).max(1)])
    }

    fn full(upto: usize, bits: usize) -> Self {
        let mut z = Self::with_capacity(bits);
        for i in 0..upto {
            z.insert(i);
        }
        z
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &Self) -> Self {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: Point,
    zero: ZeroSet,
}

pub(crate) fn cone_generators(dim: usize, ineqs: &[Point], eqs: &[Point]) -> ConeGenerators {
    let constraints: Vec<(&Point, bool)> = eqs
        .iter()
        .map(|e| (e, true))
        .chain(ineqs.iter().map(|a| (a, false)))
        .filter(|(a, _)| a.iter().any(|x| !x.is_zero()))
        .collect();
    let total = constraints.len();

    let mut lines: Vec<Point> = (0..dim).map(|i| unit(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, (a, is_eq)) in constraints.iter().enumerate() {
        if let Some(p) = lines.iter().position(|l| !dot(a, l).is_zero()) {
            let l = lines.remove(p);
            let al = dot(a, &l);
            for m in lines.iter_mut() {
                let am = dot(a, m);
                if !am.is_zero() {
                    *m = sub(m, &scale(&l, &(am / &al)));
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    r.v = sub(&r.v, &scale(&l, &(ar / &al)));
                    r.v = primitive(&r.v).expect("projected ray stays nonzero");
                }
                r.zero.insert(k);
            }
            if !is_eq {
                let v = if al.is_positive() { crate::rational::neg(&l) } else { l };
                rays.push(Ray {
                    v: primitive(&v).expect("line is nonzero"),
                    zero: ZeroSet::full(k, total),
                });
            }
            continue;
        }

        let vals: Vec<Rational> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();

        let mut next: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if vals[i].is_zero() {
                let mut r = r.clone();
                r.zero.insert(k);
                next.push(r);
            } else if vals[i].is_negative() && !is_eq {
                next.push(r.clone());
            }
        }
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zero.intersect(&rays[n].zero);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == n || !common.is_subset(&r.zero));
                if !adjacent {
                    continue;
                }
                // (a·p) n - (a·n) p  is a positive combination lying on a·y = 0
                let v = sub(&scale(&rays[n].v, &vals[p]), &scale(&rays[p].v, &vals[n]));
                let Some(v) = primitive(&v) else { continue };
                let mut zero = common;
                zero.insert(k);
                next.push(Ray { v, zero });
            }
        }
        rays = next;
    }

    let mut out_rays: Vec<Point> = Vec::new();
    for r in rays {
        if !out_rays.contains(&r.v) {
            out_rays.push(r.v);
        }
    }
    let out_lines = lines
        .into_iter()
        .filter_map(|l| primitive_unsigned(&l))
        .collect();
    ConeGenerators {
        rays: out_rays,
        lines: out_lines,
    }
}
