//! Structural audit of a matching pair: component shapes of the leftover
//! graph, the lemma predicates, and the discharging ledger.

mod charges;
mod lemmas;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::{EdgeId, Graph, VertexId};
use crate::matching::{find_improving_move, LeftoverComponent, MatchingPair, NeighborhoodLimits};
use crate::Result;

pub use charges::{
    compute_charges, ky_bound, ChargeReport, ComponentCharge, Transfer, VertexCharge,
};
pub use lemmas::{check_lemmas, KindCounts, LemmaReport, PairedP3, PredicateResult, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationReason {
    Cycle,
    TooManyEdges,
    /// A tree with four or more edges and a vertex of degree three.
    C1Shape,
}

/// Shape of a leftover component. The four basic shapes are the paths with
/// one, two and three edges and the claw.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    P2,
    P3,
    P4,
    K13,
    Violation(ViolationReason),
}

impl ComponentKind {
    pub fn is_basic(self) -> bool {
        !matches!(self, ComponentKind::Violation(_))
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::P2 => f.write_str("P2"),
            ComponentKind::P3 => f.write_str("P3"),
            ComponentKind::P4 => f.write_str("P4"),
            ComponentKind::K13 => f.write_str("K13"),
            ComponentKind::Violation(ViolationReason::Cycle) => f.write_str("VIOLATION(cycle)"),
            ComponentKind::Violation(ViolationReason::TooManyEdges) => {
                f.write_str("VIOLATION(too-many-edges)")
            }
            ComponentKind::Violation(ViolationReason::C1Shape) => {
                f.write_str("VIOLATION(C1-shape)")
            }
        }
    }
}

impl Serialize for ComponentKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Classifies a connected subgraph given by its vertices and edges.
pub fn classify_shape(g: &Graph, vertices: &[VertexId], edges: &[EdgeId]) -> ComponentKind {
    if edges.len() >= vertices.len() {
        return ComponentKind::Violation(ViolationReason::Cycle);
    }
    let mut degree = std::collections::HashMap::new();
    for &e in edges {
        let (u, v) = g.endpoints(e);
        *degree.entry(u).or_insert(0usize) += 1;
        *degree.entry(v).or_insert(0usize) += 1;
    }
    let max_degree = degree.values().copied().max().unwrap_or(0);
    match (edges.len(), max_degree) {
        (1, _) => ComponentKind::P2,
        (2, _) => ComponentKind::P3,
        (3, 3) => ComponentKind::K13,
        (3, _) => ComponentKind::P4,
        (_, d) if d >= 3 => ComponentKind::Violation(ViolationReason::C1Shape),
        _ => ComponentKind::Violation(ViolationReason::TooManyEdges),
    }
}

/// Every non-trivial component of the leftover graph with its kind.
pub fn classify_components(g: &Graph, pair: &MatchingPair) -> Vec<LeftoverComponent> {
    pair.leftover_graph(g).components
}

/// No move within `limits` improves the objective of `pair`.
pub fn is_switch_stable(
    g: &Graph,
    pair: &MatchingPair,
    limits: NeighborhoodLimits,
) -> Result<bool> {
    pair.validate(g)?;
    Ok(find_improving_move(g, pair, limits).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_named;

    #[test]
    fn c5_with_four_matched_edges_leaves_a_p2() {
        let c5 = generate_named("c5").unwrap();
        let e = |u, v| c5.edge_between(VertexId(u), VertexId(v)).unwrap();
        let pair = MatchingPair::new(&c5, &[e(0, 1), e(2, 3)], &[e(1, 2), e(3, 4)]).unwrap();
        let comps = classify_components(&c5, &pair);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::P2);
    }

    #[test]
    fn k4_with_one_matched_edge_has_a_cycle() {
        let k4 = generate_named("k4").unwrap();
        let e = k4.edge_between(VertexId(1), VertexId(2)).unwrap();
        let pair = MatchingPair::new(&k4, &[e], &[]).unwrap();
        let comps = classify_components(&k4, &pair);
        assert_eq!(comps.len(), 1);
        assert_eq!(
            comps[0].kind,
            ComponentKind::Violation(ViolationReason::Cycle)
        );
        assert_eq!(comps[0].kind.to_string(), "VIOLATION(cycle)");
    }

    #[test]
    fn shapes_of_small_trees() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 6)]).unwrap();
        let v = |xs: &[usize]| xs.iter().map(|&x| VertexId(x)).collect::<Vec<_>>();
        let e = |ps: &[(usize, usize)]| {
            ps.iter()
                .map(|&(a, b)| g.edge_between(VertexId(a), VertexId(b)).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(
            classify_shape(&g, &v(&[0, 1, 2, 3]), &e(&[(0, 1), (1, 2), (2, 3)])),
            ComponentKind::P4
        );
        assert_eq!(
            classify_shape(&g, &v(&[0, 1, 2, 5]), &e(&[(0, 1), (1, 2), (1, 5)])),
            ComponentKind::K13
        );
        assert_eq!(
            classify_shape(
                &g,
                &v(&[0, 1, 2, 3, 4]),
                &e(&[(0, 1), (1, 2), (2, 3), (3, 4)])
            ),
            ComponentKind::Violation(ViolationReason::TooManyEdges)
        );
        assert_eq!(
            classify_shape(
                &g,
                &v(&[0, 1, 2, 3, 5]),
                &e(&[(0, 1), (1, 2), (2, 3), (1, 5)])
            ),
            ComponentKind::Violation(ViolationReason::C1Shape)
        );
    }

    #[test]
    fn stability_of_extremes() {
        let c6 = generate_named("c6").unwrap();
        let e = |u, v| c6.edge_between(VertexId(u), VertexId(v)).unwrap();
        let alt = MatchingPair::new(
            &c6,
            &[e(0, 1), e(2, 3), e(4, 5)],
            &[e(1, 2), e(3, 4), e(0, 5)],
        )
        .unwrap();
        assert!(is_switch_stable(&c6, &alt, NeighborhoodLimits::FULL).unwrap());
        let k4 = generate_named("k4").unwrap();
        assert!(
            !is_switch_stable(&k4, &MatchingPair::empty(&k4), NeighborhoodLimits::FULL).unwrap()
        );
    }
}
