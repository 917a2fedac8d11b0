use corecalc::generate::{chain_instance, intersection_instance, map_and_point, normal_query, sum_instance, Gen};
use corecalc::normalcalc::{
    coderivative, coderivative_chain_rule, coderivative_sum_rule, graph_core_check, intersection_rule, normal_cone,
};
use corecalc::oracle::oracle_normal_member;
use corecalc::rational::{add, neg, scale};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_cone_generators_are_normal(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = Gen::new(seed, 3);
        let (omega, x, _) = normal_query(&mut g, n, true);
        let cone = normal_cone(&omega, &x).unwrap().unwrap();
        for v in &cone.generators {
            prop_assert!(oracle_normal_member(&omega, &x, v).unwrap().verdict);
        }
        for l in &cone.lineality {
            prop_assert!(oracle_normal_member(&omega, &x, l).unwrap().verdict);
            prop_assert!(oracle_normal_member(&omega, &x, &neg(l)).unwrap().verdict);
        }
    }

    #[test]
    fn normal_cone_matches_oracle(seed in any::<u64>(), n in 1usize..=3, member in any::<bool>()) {
        let mut g = Gen::new(seed, 3);
        let (omega, x, f) = normal_query(&mut g, n, member);
        let engine = normal_cone(&omega, &x).unwrap().unwrap().contains(&f).unwrap();
        let oracle = oracle_normal_member(&omega, &x, &f).unwrap();
        prop_assert_eq!(engine, oracle.verdict);
        prop_assert_eq!(engine, member);
        if !oracle.verdict {
            let w = oracle.witness.unwrap();
            let gap = corecalc::rational::dot(&f, &corecalc::rational::sub(&w, &x));
            prop_assert!(gap > num_traits::Zero::zero());
        }
    }

    #[test]
    fn intersection_rule_holds(seed in any::<u64>(), n in 2usize..=3, qc in any::<bool>()) {
        let mut g = Gen::new(seed, 3);
        let inst = intersection_instance(&mut g, n, qc);
        let v = intersection_rule(&inst.o1, &inst.o2, &inst.x).unwrap();
        prop_assert!(v.rhs_subset_lhs);
        if qc {
            prop_assert!(v.qc_satisfied);
        }
        prop_assert!(!v.is_violation());
    }

    #[test]
    fn sum_rule_holds(seed in any::<u64>(), n in 1usize..=2, m in 1usize..=2, qc in any::<bool>()) {
        let mut g = Gen::new(seed, 3);
        let s = sum_instance(&mut g, n, m, qc);
        let v = coderivative_sum_rule(&s.f1, &s.f2, &s.x, &s.y, &s.y1, &s.y2, &s.g).unwrap();
        prop_assert!(v.rhs_subset_lhs);
        if qc {
            prop_assert!(v.qc_satisfied);
        }
        prop_assert!(!v.is_violation());
    }

    #[test]
    fn chain_rule_holds(seed in any::<u64>(), n in 1usize..=2, m in 1usize..=2, p in 1usize..=2, qc in any::<bool>()) {
        let mut g = Gen::new(seed, 3);
        let c = chain_instance(&mut g, n, m, p, qc);
        let v = coderivative_chain_rule(&c.f, &c.g, &c.x, &c.z, &c.y, &c.h).unwrap();
        prop_assert!(v.rhs_subset_lhs);
        if qc {
            prop_assert!(v.qc_satisfied);
        }
        prop_assert!(!v.is_violation());
    }

    #[test]
    fn graph_core_agrees(seed in any::<u64>(), n in 1usize..=2, m in 1usize..=2) {
        let mut g = Gen::new(seed, 3);
        let (f, x, y) = map_and_point(&mut g, n, m);
        let (lhs, rhs) = graph_core_check(&f, &x, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coderivative_is_positively_homogeneous(seed in any::<u64>(), n in 1usize..=2, m in 1usize..=2) {
        let mut g = Gen::new(seed, 3);
        let s = sum_instance(&mut g, n, m, true);
        let xy1: Vec<_> = s.x.iter().chain(&s.y1).cloned().collect();
        let t = g.positive(4);
        let base = coderivative(&s.f1, &s.x, &s.y1, &s.g).unwrap();
        let scaled = coderivative(&s.f1, &s.x, &s.y1, &scale(&s.g, &t)).unwrap();
        prop_assert!(scaled.set_equal(&base.scale_by(&t)).unwrap());
        prop_assert_eq!(xy1.len(), n + m);
        // adding a normal to the graph keeps the coderivative nonempty at 0
        let zero = coderivative(&s.f1, &s.x, &s.y1, &add(&s.g, &neg(&s.g))).unwrap();
        prop_assert!(zero.contains(&vec![num_traits::Zero::zero(); n]).unwrap());
    }
}
