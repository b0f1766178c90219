mod common;

use common::{check_table_rows, edge, line_graph_distances, oracle_charges, random_subcubic};
use num_rational::Rational64;
use proptest::prelude::*;
use sepack::audit::{
    check_lemmas, classify_components, compute_charges, is_switch_stable, ky_bound, ComponentKind,
    ViolationReason,
};
use sepack::conflict::build_conflict_graph;
use sepack::graph::{generate_named, random_cubic};
use sepack::matching::{
    greedy_init, local_search, MatchingPair, NeighborhoodLimits, SearchConfig, Side,
};
use sepack::{Error, Graph, VertexId};

fn labels(g: &Graph, pair: &MatchingPair) -> Vec<u8> {
    g.edge_ids()
        .map(|e| match pair.label(e) {
            None => 0,
            Some(Side::First) => 1,
            Some(Side::Second) => 2,
        })
        .collect()
}

#[test]
fn classification_examples() {
    let c5 = generate_named("c5").unwrap();
    let e = |u, v| edge(&c5, u, v);
    let pair = MatchingPair::new(&c5, &[e(0, 1), e(2, 3)], &[e(1, 2), e(3, 4)]).unwrap();
    let comps = classify_components(&c5, &pair);
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0].kind, ComponentKind::P2);

    let k4 = generate_named("k4").unwrap();
    let pair = MatchingPair::new(&k4, &[edge(&k4, 1, 2)], &[]).unwrap();
    let comps = classify_components(&k4, &pair);
    assert_eq!(comps.len(), 1);
    assert_eq!(
        comps[0].kind,
        ComponentKind::Violation(ViolationReason::Cycle)
    );
    assert_eq!(
        serde_json::to_string(&comps[0].kind).unwrap(),
        "\"VIOLATION(cycle)\""
    );
}

#[test]
fn lemma_examples() {
    let g = Graph::from_edges(
        10,
        [
            (0, 1),
            (0, 2),
            (0, 3),
            (5, 6),
            (5, 7),
            (5, 8),
            (1, 6),
            (1, 4),
            (6, 9),
        ],
    )
    .unwrap();
    let pair = MatchingPair::new(&g, &[edge(&g, 1, 4), edge(&g, 6, 9)], &[edge(&g, 1, 6)]).unwrap();
    let report = check_lemmas(&g, &pair);
    assert!(!report.no_k13_k13_link.holds);
    assert!(report
        .no_k13_k13_link
        .witness
        .as_ref()
        .unwrap()
        .edges
        .contains(&edge(&g, 1, 6)));
    assert!(report.violated().contains(&"no_K13_K13_link"));
    assert!(!report.hard_hold());

    let c6 = generate_named("c6").unwrap();
    let e = |u, v| edge(&c6, u, v);
    let alt = MatchingPair::new(
        &c6,
        &[e(0, 1), e(2, 3), e(4, 5)],
        &[e(1, 2), e(3, 4), e(5, 0)],
    )
    .unwrap();
    let report = check_lemmas(&c6, &alt);
    assert!(report.all_hold());
    let json = serde_json::to_value(&report).unwrap();
    for key in [
        "no_C1",
        "no_cycle",
        "no_long_path",
        "no_K13_K13_link",
        "paired_P3_pairs",
        "chain_P3_P3_P3",
    ] {
        assert!(json.get(key).is_some(), "{key}");
    }
}

#[test]
fn stability_examples() {
    let c6 = generate_named("c6").unwrap();
    let e = |u, v| edge(&c6, u, v);
    let alt = MatchingPair::new(
        &c6,
        &[e(0, 1), e(2, 3), e(4, 5)],
        &[e(1, 2), e(3, 4), e(5, 0)],
    )
    .unwrap();
    assert!(is_switch_stable(&c6, &alt, NeighborhoodLimits::FULL).unwrap());
    let k4 = generate_named("k4").unwrap();
    assert!(!is_switch_stable(&k4, &MatchingPair::empty(&k4), NeighborhoodLimits::FULL).unwrap());

    let p = generate_named("petersen").unwrap();
    let out = local_search(&p, 3, &SearchConfig::default()).unwrap();
    assert!(out.stable);
    assert!(is_switch_stable(&p, &out.pair, NeighborhoodLimits::FULL).unwrap());
    assert!(classify_components(&p, &out.pair)
        .iter()
        .all(|c| c.kind.is_basic()));
}

#[test]
fn table_rows_are_reproduced() {
    let seen = check_table_rows().unwrap();
    assert!(seen.iter().all(|&k| k > 0), "rows realised: {seen:?}");
}

#[test]
fn ky_bound_values() {
    assert_eq!(ky_bound(5, 5).unwrap(), Rational64::from_integer(10));
    assert_eq!(ky_bound(4, 4).unwrap(), Rational64::from_integer(6));
    assert_eq!(ky_bound(5, 9).unwrap(), Rational64::from_integer(19));
    for n in 5..=40 {
        assert_eq!(ky_bound(5, n).unwrap(), Rational64::new(9 * n - 5, 4));
    }
    assert!(matches!(ky_bound(2, 4), Err(Error::InvalidArgument(_))));
}

#[test]
fn charges_need_basic_components() {
    let k4 = generate_named("k4").unwrap();
    assert!(matches!(
        compute_charges(&k4, &MatchingPair::empty(&k4)),
        Err(Error::NonBasicComponent(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kinds_match_an_independent_shape_check(m in 1usize..=24, seed in any::<u64>()) {
        let g = random_subcubic(m, seed);
        let pair = greedy_init(&g, seed).unwrap();
        for c in classify_components(&g, &pair) {
            let mut deg = std::collections::HashMap::new();
            for &e in &c.edges {
                let (u, v) = g.endpoints(e);
                *deg.entry(u).or_insert(0) += 1;
                *deg.entry(v).or_insert(0) += 1;
            }
            let acyclic = c.edges.len() + 1 == deg.len();
            let max = deg.values().copied().max().unwrap_or(0);
            let want = match (acyclic, c.edges.len(), max) {
                (false, _, _) => ComponentKind::Violation(ViolationReason::Cycle),
                (true, 1, _) => ComponentKind::P2,
                (true, 2, _) => ComponentKind::P3,
                (true, 3, 3) => ComponentKind::K13,
                (true, 3, _) => ComponentKind::P4,
                (true, _, 3) => ComponentKind::Violation(ViolationReason::C1Shape),
                _ => ComponentKind::Violation(ViolationReason::TooManyEdges),
            };
            prop_assert_eq!(c.kind, want);
            prop_assert_eq!(c.vertices.len(), deg.len());
        }
    }

    #[test]
    fn charges_are_conserved_and_match_the_oracle(half in 4usize..=16, seed in any::<u64>()) {
        let g = random_cubic(2 * half, seed).unwrap();
        let pair = local_search(&g, seed, &SearchConfig::default()).unwrap().pair;
        if let Ok(report) = compute_charges(&g, &pair) {
            prop_assert_eq!(report.initial_total, report.net_total);
            let sum: Rational64 = report.components.iter().map(|c| c.net).sum();
            prop_assert_eq!(sum, report.net_total);
            let h = build_conflict_graph(&g, &pair);
            let d = line_graph_distances(&g);
            for (i, v) in report.vertices.iter().enumerate() {
                prop_assert_eq!(h.vertices()[i], v.edge);
                prop_assert_eq!(v.h_degree, h.degree(i));
                let brute = pair.leftover().iter().filter(|f| **f != v.edge && d[v.edge.0][f.0] <= 2).count();
                prop_assert_eq!(v.h_degree, brute);
                prop_assert_eq!(v.initial, Rational64::from_integer(v.h_degree as i64) - Rational64::new(9, 2));
            }
            let oracle = oracle_charges(&g, &labels(&g, &pair));
            let mut ours: Vec<i64> = report.components.iter().map(|c| (c.net * 2).to_integer()).collect();
            let mut theirs: Vec<i64> = oracle.iter().map(|o| o.doubled_net()).collect();
            ours.sort_unstable();
            theirs.sort_unstable();
            prop_assert_eq!(ours, theirs);
        }
    }

    #[test]
    fn stable_pairs_satisfy_the_hard_predicates(half in 4usize..=14, seed in any::<u64>()) {
        let g = random_cubic(2 * half, seed).unwrap();
        let out = local_search(&g, seed, &SearchConfig::default()).unwrap();
        prop_assume!(out.stable);
        let report = check_lemmas(&g, &out.pair);
        prop_assert!(report.hard_hold(), "violated: {:?}", report.violated());
        for c in classify_components(&g, &out.pair) {
            prop_assert!(c.kind.is_basic());
        }
        prop_assert!((0..g.n()).all(|v| out.pair.leftover_degree(&g, VertexId(v)) <= 3));
    }
}
