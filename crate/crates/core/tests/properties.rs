//! Property tests for the structural invariants of the score machinery.

use num_bigint::BigUint;
use num_traits::Signed;
use proptest::prelude::*;

use hyperhom_core::hypergraph::{ClassLabel, EdgeTypeCounts, NodeId, TwoClassHypergraph};
use hyperhom_core::rational::{format_decimal, parse_rational, rat, Rational};
use hyperhom_core::scores::{
    affinity_profile, alternative_affinity_profile, alternative_baseline_profile,
    baseline_profile, group_homophily_index, homophily_verdict,
};

/// Strategy: a small random hypergraph (n <= 12, k <= 5) with at least one
/// node per class and random edges with possible repeats.
fn small_hypergraph_strategy() -> impl Strategy<Value = TwoClassHypergraph> {
    (2usize..=12)
        .prop_flat_map(|n| {
            (Just(n), 1usize..n, 1usize..=5usize.min(n))
                .prop_flat_map(|(n, n_a, k)| {
                    let edge = proptest::sample::subsequence((0..n).collect::<Vec<_>>(), k);
                    (Just((n, n_a, k)), proptest::collection::vec(edge, 0..25))
                })
        })
        .prop_map(|((n, n_a, k), edges)| {
            let nodes: Vec<(NodeId, ClassLabel)> = (0..n)
                .map(|i| {
                    let label = if i < n_a { ClassLabel::A } else { ClassLabel::B };
                    (NodeId::new(format!("v{i}")), label)
                })
                .collect();
            let edges: Vec<Vec<NodeId>> = edges
                .into_iter()
                .map(|members| {
                    members
                        .into_iter()
                        .map(|i| NodeId::new(format!("v{i}")))
                        .collect()
                })
                .collect();
            TwoClassHypergraph::new(nodes, edges, k).expect("sampled edges are valid")
        })
}

proptest! {
    /// sum_{v in X} d_t(v) = t * m_t(X) for both classes and all t, and the
    /// type counts total the edge multiset size.
    #[test]
    fn degree_edge_identity(h in small_hypergraph_strategy()) {
        let counts = h.edge_type_counts();
        prop_assert_eq!(counts.total(), BigUint::from(h.edge_count()));
        let degrees = h.all_typed_degrees();
        for class in ClassLabel::BOTH {
            for t in 1..=h.k() {
                let degree_sum: u64 = degrees
                    .iter()
                    .filter(|d| h.label_of(&d.node) == Some(class))
                    .map(|d| d.of_type(t))
                    .sum();
                let expected = counts.class_count(class, t) * BigUint::from(t);
                prop_assert_eq!(BigUint::from(degree_sum), expected, "class {} t {}", class, t);
            }
        }
    }

    /// Edge-type counts ignore edge order and class-preserving relabeling.
    #[test]
    fn counts_invariant_under_relabeling(h in small_hypergraph_strategy(), seed in 0u64..1000) {
        let counts = h.edge_type_counts();

        // Reverse edge order and rename every node (class kept).
        let rename = |id: &NodeId| NodeId::new(format!("renamed-{seed}-{id}"));
        let nodes: Vec<(NodeId, ClassLabel)> = h
            .nodes()
            .map(|(id, class)| (rename(id), class))
            .collect();
        let mut edges: Vec<Vec<NodeId>> = (0..h.edge_count())
            .map(|e| h.edge_member_ids(e).map(rename).collect())
            .collect();
        edges.reverse();
        let relabeled = TwoClassHypergraph::new(nodes, edges, h.k()).unwrap();
        prop_assert_eq!(relabeled.edge_type_counts(), counts);
    }

    /// Affinity and baseline profiles sum to one exactly; the group homophily
    /// index never reaches k against strictly positive baselines.
    #[test]
    fn normalization_and_ghi_bound(h in small_hypergraph_strategy()) {
        let counts = h.edge_type_counts();
        let n_a = h.class_size(ClassLabel::A) as u64;
        let n_b = h.class_size(ClassLabel::B) as u64;
        let one = Rational::from_integer(1.into());
        for class in ClassLabel::BOTH {
            if let Ok(b) = baseline_profile(n_a, n_b, h.k(), class) {
                prop_assert_eq!(b.sum(), one.clone());
                if let Ok(h_profile) = affinity_profile(&counts, class) {
                    prop_assert_eq!(h_profile.sum(), one.clone());
                    let ghi = group_homophily_index(&h_profile, &b).unwrap();
                    if b.values().iter().all(|v| !num_traits::Zero::is_zero(v)) {
                        prop_assert!(ghi < h.k().max(1));
                        // Majority homophily forces the top majority block
                        // strictly above baseline.
                        let verdict = homophily_verdict(&h_profile, &b).unwrap();
                        if verdict.majority {
                            prop_assert!(verdict.ghi >= h.k() - h.k() / 2);
                        }
                        prop_assert_eq!(verdict.simple, verdict.ghi >= 1);
                    }
                }
            }
            if let Ok(b) = alternative_baseline_profile(n_a, n_b, h.k(), class) {
                prop_assert_eq!(b.sum(), one.clone());
            }
            if let Ok(a) = alternative_affinity_profile(&counts, class) {
                prop_assert_eq!(a.sum(), one.clone());
            }
        }
    }

    /// Complete hypergraph counts make both affinity variants equal their
    /// baselines (exercised over random class splits).
    #[test]
    fn complete_counts_reproduce_baselines(n in 2u64..=11, split in 1u64..=10, k in 1usize..=5) {
        prop_assume!(split < n);
        prop_assume!(n >= k as u64);
        let n_a = split;
        let n_b = n - split;
        let counts = EdgeTypeCounts::complete(n_a, n_b, k).unwrap();
        for class in ClassLabel::BOTH {
            prop_assert_eq!(
                affinity_profile(&counts, class).unwrap(),
                baseline_profile(n_a, n_b, k, class).unwrap()
            );
            prop_assert_eq!(
                alternative_affinity_profile(&counts, class).unwrap(),
                alternative_baseline_profile(n_a, n_b, k, class).unwrap()
            );
        }
    }

    /// Exact rendering round-trips through the p/q form, and decimal output
    /// parses back within rounding tolerance.
    #[test]
    fn rational_rendering_round_trip(n in -100_000i64..100_000, d in 1i64..100_000) {
        let value = rat(n, d);
        let exact = format!("{}/{}", value.numer(), value.denom());
        prop_assert_eq!(parse_rational(&exact).unwrap(), value.clone());
        let decimal = format_decimal(&value, 12);
        let reparsed = parse_rational(&decimal).unwrap();
        let err = (reparsed - &value).abs();
        prop_assert!(err <= rat(1, 1_000_000), "{} -> {}", value, decimal);
    }
}
