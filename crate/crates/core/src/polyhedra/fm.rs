//! Fourier–Motzkin projection with LP-based redundancy pruning.

use num_traits::{Signed, Zero};

use super::HRep;
use crate::lp::{LinearProgram, LpOutcome};
use crate::rational::{dot, int, scale, sub, Point, Rational};

type Row = (Point, Rational);

/// Eliminates the variables in `elim` from `h`, returning a system over the
/// remaining coordinates in their original order.
pub(crate) fn eliminate(h: &HRep, elim: &[usize]) -> HRep {
    let n = h.dim;
    let mut ineqs: Vec<Row> = h.ineqs.clone();
    let mut eqs: Vec<Row> = h.eqs.clone();
    let mut todo: Vec<usize> = elim.to_vec();
    todo.sort_unstable();
    todo.dedup();

    // a strict point of the system stays strict under every FM combination
    let mut interior: Option<Option<Point>> = None;
    while !todo.is_empty() {
        if trivially_infeasible(&ineqs, &eqs) {
            return HRep::empty(n - elim_count(elim));
        }
        // equations first: they remove a variable without growing the system
        let eq_pick = todo
            .iter()
            .enumerate()
            .find_map(|(ti, &j)| eqs.iter().position(|(c, _)| !c[j].is_zero()).map(|ei| (ti, ei)));
        if let Some((ti, ei)) = eq_pick {
            let j = todo.remove(ti);
            let (c, d) = eqs.remove(ei);
            let substitute = |row: &mut Row| {
                if row.0[j].is_zero() {
                    return;
                }
                let f = &row.0[j] / &c[j];
                row.0 = sub(&row.0, &scale(&c, &f));
                row.1 = &row.1 - &f * &d;
            };
            ineqs.iter_mut().for_each(substitute);
            eqs.iter_mut().for_each(substitute);
            (ineqs, eqs) = renormalize(n, ineqs, eqs);
            continue;
        }
        // otherwise pick the variable producing the fewest new rows
        let (ti, j) = todo
            .iter()
            .enumerate()
            .min_by_key(|(_, &j)| {
                let p = ineqs.iter().filter(|(a, _)| a[j].is_positive()).count();
                let q = ineqs.iter().filter(|(a, _)| a[j].is_negative()).count();
                p * q
            })
            .map(|(ti, &j)| (ti, j))
            .expect("todo is nonempty");
        todo.remove(ti);
        if interior.is_none() {
            match interior_point(n, &ineqs, &eqs) {
                None => return HRep::empty(n - elim_count(elim)),
                found => interior = found,
            }
        }
        let mut next: Vec<Row> = Vec::new();
        let (pos, rest): (Vec<Row>, Vec<Row>) =
            ineqs.into_iter().partition(|(a, _)| a[j].is_positive());
        let (negs, zero): (Vec<Row>, Vec<Row>) =
            rest.into_iter().partition(|(a, _)| a[j].is_negative());
        next.extend(zero);
        for (pa, pb) in &pos {
            for (na, nb) in &negs {
                let wp = -&na[j];
                let wn = pa[j].clone();
                let a: Point = pa.iter().zip(na).map(|(x, y)| &wp * x + &wn * y).collect();
                let b = &wp * pb + &wn * nb;
                next.push((a, b));
            }
        }
        (ineqs, eqs) = renormalize(n, next, eqs);
        match prune_redundant(n, ineqs, &eqs, interior.as_ref().and_then(|z| z.as_ref())) {
            Some(pruned) => ineqs = pruned,
            None => return HRep::empty(n - elim_count(elim)),
        }
    }

    if trivially_infeasible(&ineqs, &eqs) {
        return HRep::empty(n - elim_count(elim));
    }
    let keep: Vec<usize> = (0..n).filter(|j| !elim.contains(j)).collect();
    let restrict = |(a, b): Row| -> Row { (keep.iter().map(|&j| a[j].clone()).collect(), b) };
    HRep::new(
        keep.len(),
        ineqs.into_iter().map(restrict).collect(),
        eqs.into_iter().map(restrict).collect(),
    )
}

fn elim_count(elim: &[usize]) -> usize {
    let mut e = elim.to_vec();
    e.sort_unstable();
    e.dedup();
    e.len()
}

fn renormalize(n: usize, ineqs: Vec<Row>, eqs: Vec<Row>) -> (Vec<Row>, Vec<Row>) {
    let h = HRep::new(n, ineqs, eqs);
    (h.ineqs, h.eqs)
}

fn trivially_infeasible(ineqs: &[Row], eqs: &[Row]) -> bool {
    ineqs
        .iter()
        .any(|(a, b)| b.is_negative() && a.iter().all(Zero::is_zero))
        || eqs
            .iter()
            .any(|(c, d)| !d.is_zero() && c.iter().all(Zero::is_zero))
}

/// Drops every inequality implied by the others. `None` when the system is
/// infeasible.
///
/// Uses Clarkson's scheme when the system has a strict interior point: each
/// candidate is tested against the rows already known to be irredundant,
/// and a failed test yields a new irredundant row by ray shooting from the
/// interior point. Ties and flat systems fall back to one LP per row.
fn prune_redundant(n: usize, ineqs: Vec<Row>, eqs: &[Row], z: Option<&Point>) -> Option<Vec<Row>> {
    let z = match z {
        Some(z) => z.clone(),
        None => match interior_point(n, &ineqs, eqs)? {
            Some(z) => z,
            None => return Some(prune_each(n, ineqs, eqs)),
        },
    };
    let mut known = vec![false; ineqs.len()];
    let mut dropped = vec![false; ineqs.len()];
    for i in 0..ineqs.len() {
        while !known[i] && !dropped[i] {
            let (a, b) = &ineqs[i];
            let mut lp = LinearProgram::new(n);
            lp.maximize(a.clone());
            lp.le(a.clone(), b + int(1));
            for (k, row) in ineqs.iter().enumerate() {
                if known[k] {
                    lp.le(row.0.clone(), row.1.clone());
                }
            }
            for (c, d) in eqs {
                lp.eq(c.clone(), d.clone());
            }
            let LpOutcome::Optimal { point, value } = lp.solve() else {
                unreachable!("bounded and feasible by construction")
            };
            if value <= *b {
                dropped[i] = true;
                continue;
            }
            match shoot(&ineqs, &dropped, &z, &point) {
                Some(j) => known[j] = true,
                None => {
                    if implied_by_others(n, &ineqs, &dropped, i, eqs) {
                        dropped[i] = true;
                    } else {
                        known[i] = true;
                    }
                }
            }
        }
    }
    Some(
        ineqs
            .into_iter()
            .zip(known)
            .filter_map(|(r, k)| k.then_some(r))
            .collect(),
    )
}

/// `Some(Some(z))` for a point with every inequality strict, `Some(None)`
/// when the system is feasible but flat, `None` when infeasible.
fn interior_point(n: usize, ineqs: &[Row], eqs: &[Row]) -> Option<Option<Point>> {
    let mut lp = LinearProgram::new(n + 1);
    let mut obj = vec![Rational::zero(); n + 1];
    obj[n] = int(1);
    lp.maximize(obj.clone());
    lp.le(obj, int(1));
    for (a, b) in ineqs {
        let mut row = a.clone();
        row.push(int(1));
        lp.le(row, b.clone());
    }
    for (c, d) in eqs {
        let mut row = c.clone();
        row.push(Rational::zero());
        lp.eq(row, d.clone());
    }
    match lp.solve() {
        LpOutcome::Infeasible => None,
        LpOutcome::Optimal { mut point, value } => {
            if value.is_positive() {
                point.pop();
                Some(Some(point))
            } else {
                Some(None)
            }
        }
        LpOutcome::Unbounded => unreachable!("slack is capped"),
    }
}

/// Ray shooting towards `p`, retried from nudged interior points when the
/// first row hit is not unique.
fn shoot(ineqs: &[Row], dropped: &[bool], z: &[Rational], p: &[Rational]) -> Option<usize> {
    if let Some(j) = first_hit(ineqs, dropped, z, p) {
        return Some(j);
    }
    let n = z.len();
    let mut state: u64 = 0x9e37_79b9;
    for _ in 0..8 {
        let w: Point = (0..n)
            .map(|_| {
                state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
                int(((state >> 33) % 7) as i64 - 3)
            })
            .collect();
        // step small enough to keep every row strict at the nudged point
        let mut step = int(1);
        for (j, (a, b)) in ineqs.iter().enumerate() {
            if dropped[j] {
                continue;
            }
            let rate = dot(a, &w);
            if rate.is_positive() {
                let room = (b - dot(a, z)) / (rate * int(2));
                if room < step {
                    step = room;
                }
            }
        }
        let nudged: Point = z.iter().zip(&w).map(|(zi, wi)| zi + &step * wi).collect();
        if let Some(j) = first_hit(ineqs, dropped, &nudged, p) {
            return Some(j);
        }
    }
    None
}

/// The unique row first reached on the segment from `z` to `p`, if unique.
fn first_hit(ineqs: &[Row], dropped: &[bool], z: &[Rational], p: &[Rational]) -> Option<usize> {
    let d = sub(p, z);
    let mut best: Option<(Rational, usize, bool)> = None;
    for (j, (a, b)) in ineqs.iter().enumerate() {
        if dropped[j] {
            continue;
        }
        let rate = dot(a, &d);
        if !rate.is_positive() {
            continue;
        }
        let t = (b - dot(a, z)) / rate;
        best = match best {
            None => Some((t, j, true)),
            Some((bt, bj, unique)) => match t.cmp(&bt) {
                std::cmp::Ordering::Less => Some((t, j, true)),
                std::cmp::Ordering::Equal => Some((bt, bj, false)),
                std::cmp::Ordering::Greater => Some((bt, bj, unique)),
            },
        };
    }
    match best {
        Some((_, j, true)) => Some(j),
        _ => None,
    }
}

fn implied_by_others(n: usize, ineqs: &[Row], dropped: &[bool], i: usize, eqs: &[Row]) -> bool {
    let mut lp = LinearProgram::new(n);
    lp.maximize(ineqs[i].0.clone());
    for (k, (a, b)) in ineqs.iter().enumerate() {
        if k != i && !dropped[k] {
            lp.le(a.clone(), b.clone());
        }
    }
    for (c, d) in eqs {
        lp.eq(c.clone(), d.clone());
    }
    matches!(lp.solve(), LpOutcome::Optimal { value, .. } if value <= ineqs[i].1)
}

/// One LP per row against all surviving rows.
fn prune_each(n: usize, ineqs: Vec<Row>, eqs: &[Row]) -> Vec<Row> {
    let mut dropped = vec![false; ineqs.len()];
    for i in 0..ineqs.len() {
        if implied_by_others(n, &ineqs, &dropped, i, eqs) {
            dropped[i] = true;
        }
    }
    ineqs
        .into_iter()
        .zip(dropped)
        .filter_map(|(r, d)| (!d).then_some(r))
        .collect()
}
