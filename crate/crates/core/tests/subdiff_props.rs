use corecalc::generate::{fn_chain_instance, fn_sum_instance, marginal_instance, normal_query, subgrad_query, Gen};
use corecalc::lp::LinearProgram;
use corecalc::normalcalc::normal_cone;
use corecalc::oracle::oracle_subgrad_member;
use corecalc::polyhedra::Polyhedron;
use corecalc::rational::{dot, int, sub, zeros, Extended, Point, Rational};
use corecalc::subdiff::{
    argmin_set, fn_add, fn_precompose, indicator, marginal_function, marginal_subdiff_rule, subdiff_chain_rule,
    subdiff_sum_rule, subdifferential,
};
use num_traits::Zero;
use proptest::prelude::*;

/// `min{φ(x̄, y) : (x̄, y) ∈ gph F}` as one LP over `(y, α)`.
fn marginal_by_lp(phi_epi: &Polyhedron, gph: &Polyhedron, x: &[Rational], m: usize) -> Option<Rational> {
    let n = x.len();
    let mut lp = LinearProgram::new(m + 1);
    // rows over (x, y, α) with x fixed move to the right-hand side
    let add_rows = |h: &corecalc::polyhedra::HRep, with_alpha: bool, lp: &mut LinearProgram| {
        let split = |a: &Point, b: &Rational| {
            let rhs = b - dot(&a[..n], x);
            let mut row: Point = a[n..n + m].to_vec();
            row.push(if with_alpha { a[n + m].clone() } else { Rational::zero() });
            (row, rhs)
        };
        for (a, b) in &h.ineqs {
            let (row, rhs) = split(a, b);
            lp.le(row, rhs);
        }
        for (a, b) in &h.eqs {
            let (row, rhs) = split(a, b);
            lp.eq(row, rhs);
        }
    };
    add_rows(phi_epi.hrep(), true, &mut lp);
    add_rows(gph.hrep(), false, &mut lp);
    let mut c = zeros(m + 1);
    c[m] = int(1);
    lp.minimize(c);
    lp.solve_min().value().cloned()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subgradients_match_oracle(seed in any::<u64>(), n in 1usize..=3, member in any::<bool>()) {
        let mut g = Gen::new(seed, 3);
        let (phi, x, f) = subgrad_query(&mut g, n, member);
        let engine = subdifferential(&phi, &x).unwrap().contains(&f).unwrap();
        let oracle = oracle_subgrad_member(&phi, &x, &f).unwrap();
        prop_assert_eq!(engine, oracle.verdict);
        prop_assert_eq!(engine, member);
    }

    #[test]
    fn indicator_subdifferential_is_normal_cone(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = Gen::new(seed, 3);
        let (omega, x, _) = normal_query(&mut g, n, true);
        let d = subdifferential(&indicator(&omega).unwrap(), &x).unwrap();
        let nc = normal_cone(&omega, &x).unwrap().unwrap().to_polyhedron();
        prop_assert!(d.set_equal(&nc).unwrap());
    }

    #[test]
    fn subdifferential_is_monotone(seed in any::<u64>(), n in 1usize..=2) {
        let mut g = Gen::new(seed, 3);
        let (phi, x1, f1) = subgrad_query(&mut g, n, true);
        let x2 = g.pick(&phi.domain());
        let f2 = g.pick(&subdifferential(&phi, &x2).unwrap());
        let gap = dot(&sub(&f1, &f2), &sub(&x1, &x2));
        prop_assert!(gap >= Rational::zero());
    }

    #[test]
    fn sum_evaluates_pointwise(seed in any::<u64>(), n in 1usize..=2, qc in any::<bool>()) {
        let mut g = Gen::new(seed, 3);
        let s = fn_sum_instance(&mut g, n, qc);
        let total = fn_add(&s.phi1, &s.phi2).unwrap();
        for _ in 0..3 {
            let y = g.point(n, 4);
            let expected = match (s.phi1.evaluate(&y).unwrap(), s.phi2.evaluate(&y).unwrap()) {
                (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + b),
                _ => Extended::PosInfinity,
            };
            prop_assert_eq!(total.evaluate(&y).unwrap(), expected);
        }
    }

    #[test]
    fn subdiff_sum_rule_holds(seed in any::<u64>(), n in 1usize..=2, qc in any::<bool>()) {
        let mut g = Gen::new(seed, 3);
        let s = fn_sum_instance(&mut g, n, qc);
        let v = subdiff_sum_rule(&s.phi1, &s.phi2, &s.x).unwrap();
        prop_assert!(v.rhs_subset_lhs);
        if qc {
            prop_assert!(v.qc_satisfied);
            prop_assert!(v.equal);
        }
        prop_assert!(!v.is_violation());
    }

    #[test]
    fn subdiff_chain_rule_holds(seed in any::<u64>(), n in 1usize..=2, m in 1usize..=2, qc in any::<bool>()) {
        let mut g = Gen::new(seed, 3);
        let c = fn_chain_instance(&mut g, n, m, qc);
        let v = subdiff_chain_rule(&c.phi, &c.a, &c.x).unwrap();
        prop_assert!(v.rhs_subset_lhs);
        if qc {
            prop_assert!(v.qc_satisfied);
            prop_assert!(v.equal);
        }
        prop_assert!(!v.is_violation());
        let composed = fn_precompose(&c.phi, &c.a).unwrap();
        let ax = c.a.apply(&c.x).unwrap();
        prop_assert_eq!(composed.evaluate(&c.x).unwrap(), c.phi.evaluate(&ax).unwrap());
    }

    #[test]
    fn marginal_rule_holds(seed in any::<u64>(), n in 1usize..=2, m in 1usize..=2, qc in any::<bool>()) {
        let mut g = Gen::new(seed, 3);
        let inst = marginal_instance(&mut g, n, m, qc);
        let v = marginal_subdiff_rule(&inst.problem, &inst.x, &inst.y).unwrap();
        prop_assert!(v.rhs_subset_lhs);
        if qc {
            prop_assert!(v.qc_satisfied);
            prop_assert!(v.equal);
        }
        prop_assert!(!v.is_violation());
    }

    #[test]
    fn marginal_value_matches_direct_lp(seed in any::<u64>(), n in 1usize..=2, m in 1usize..=2) {
        let mut g = Gen::new(seed, 3);
        let inst = marginal_instance(&mut g, n, m, true);
        let p = &inst.problem;
        let mu = marginal_function(p);
        let direct = marginal_by_lp(p.phi().epi(), p.map().graph(), &inst.x, m).unwrap();
        prop_assert_eq!(mu.evaluate(&inst.x).unwrap(), Extended::Finite(direct.clone()));
        let xy: Point = inst.x.iter().chain(&inst.y).cloned().collect();
        prop_assert_eq!(p.phi().evaluate(&xy).unwrap(), Extended::Finite(direct));
        prop_assert!(argmin_set(p, &inst.x).unwrap().contains(&inst.y).unwrap());
    }
}
