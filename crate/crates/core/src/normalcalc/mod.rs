//! Normal cones, coderivatives of convex set-valued maps, and the
//! intersection, sum and chain rules.
//!
//! Each rule is evaluated on both sides independently and the two resulting
//! polyhedra are compared exactly in a [`RuleVerdict`].

mod cone;
mod maps;
mod rules;

pub use cone::{cone_intersect, cone_is_trivial, cone_neg, cone_sum, PolyCone};
pub use maps::{
    coderivative, intermediate_points, map_compose, map_sum, sum_decompositions, SetValuedMap,
};
pub use rules::{
    coderivative_chain_rule, coderivative_sum_rule, graph_core_check, intersection_rule,
    normal_cone, RuleVerdict,
};
