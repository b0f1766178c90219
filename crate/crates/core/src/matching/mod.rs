//! Pairs of disjoint matchings and the local search over them.
//!
//! A [`MatchingPair`] labels every edge as belonging to `M1`, `M2` or to the
//! leftover graph `G - M1 - M2`. The search maximizes the union and then
//! lexicographically minimizes the conflict structure of the leftover edges
//! (see [`ObjectiveTuple`]).

mod exact;
mod moves;
mod objective;
mod search;

use serde::{Deserialize, Serialize};

use crate::audit::{classify_shape, ComponentKind};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::{Error, Result};

pub use exact::{exact_max_union, ExactUnion, EXACT_UNION_EDGE_LIMIT};
pub use moves::{neighborhood, visit_neighborhood, Move, NeighborhoodLimits};
pub(crate) use objective::Scorer;
pub use objective::{evaluate, ObjectiveTuple};
pub use search::{find_improving_move, greedy_init, local_search, SearchConfig, SearchOutcome};

/// Which of the two matchings an edge belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "m1")]
    First,
    #[serde(rename = "m2")]
    Second,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::First, Side::Second];

    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Two disjoint matchings `M1`, `M2` of a host graph.
///
/// The pair stores one label per edge of the host; it does not keep a
/// reference to the graph, so every operation takes the graph explicitly and
/// constructors validate against it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatchingPair {
    labels: Vec<Option<Side>>,
}

/// JSON form of a pair: edge ids of each matching.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub m1: Vec<EdgeId>,
    pub m2: Vec<EdgeId>,
}

impl MatchingPair {
    pub fn empty(g: &Graph) -> MatchingPair {
        MatchingPair {
            labels: vec![None; g.m()],
        }
    }

    pub fn new(g: &Graph, m1: &[EdgeId], m2: &[EdgeId]) -> Result<MatchingPair> {
        let mut labels = vec![None; g.m()];
        for (side, set) in [(Side::First, m1), (Side::Second, m2)] {
            for &e in set {
                g.check_edge(e)?;
                match labels[e.0] {
                    Some(s) if s == side => {}
                    Some(_) => {
                        return Err(Error::InvalidPair(format!("{e} is in both matchings")));
                    }
                    None => labels[e.0] = Some(side),
                }
            }
        }
        MatchingPair::from_labels(g, labels)
    }

    pub fn from_labels(g: &Graph, labels: Vec<Option<Side>>) -> Result<MatchingPair> {
        let pair = MatchingPair { labels };
        pair.validate(g)?;
        Ok(pair)
    }

    pub fn from_record(g: &Graph, record: &PairRecord) -> Result<MatchingPair> {
        MatchingPair::new(g, &record.m1, &record.m2)
    }

    pub fn to_record(&self) -> PairRecord {
        PairRecord {
            m1: self.matching(Side::First),
            m2: self.matching(Side::Second),
        }
    }

    pub(crate) fn from_labels_unchecked(labels: Vec<Option<Side>>) -> MatchingPair {
        MatchingPair { labels }
    }

    /// Checks that the labels cover exactly the edges of `g` and that each
    /// side is a matching.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.labels.len() != g.m() {
            return Err(Error::InvalidPair(format!(
                "pair has {} labels for a graph with {} edges",
                self.labels.len(),
                g.m()
            )));
        }
        for v in 0..g.n() {
            let mut seen = [false; 2];
            for &e in g.incident(VertexId(v)) {
                if let Some(side) = self.labels[e.0] {
                    if seen[side.index()] {
                        return Err(Error::InvalidPair(format!(
                            "vertex {v} is covered twice by {}",
                            if side == Side::First { "M1" } else { "M2" }
                        )));
                    }
                    seen[side.index()] = true;
                }
            }
        }
        Ok(())
    }

    pub fn label(&self, e: EdgeId) -> Option<Side> {
        self.labels[e.0]
    }

    pub(crate) fn labels(&self) -> &[Option<Side>] {
        &self.labels
    }

    pub fn matching(&self, side: Side) -> Vec<EdgeId> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == Some(side))
            .map(|(i, _)| EdgeId(i))
            .collect()
    }

    pub fn m1(&self) -> Vec<EdgeId> {
        self.matching(Side::First)
    }

    pub fn m2(&self) -> Vec<EdgeId> {
        self.matching(Side::Second)
    }

    pub fn union_size(&self) -> usize {
        self.labels.iter().filter(|l| l.is_some()).count()
    }

    pub fn is_matched(&self, e: EdgeId) -> bool {
        self.labels[e.0].is_some()
    }

    /// Edges of `G - M1 - M2`, in id order.
    pub fn leftover(&self) -> Vec<EdgeId> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.is_none())
            .map(|(i, _)| EdgeId(i))
            .collect()
    }

    /// The edge of `side` covering `v`, if any.
    pub fn cover(&self, g: &Graph, v: VertexId, side: Side) -> Option<EdgeId> {
        g.incident(v)
            .iter()
            .copied()
            .find(|e| self.labels[e.0] == Some(side))
    }

    /// Number of leftover edges at `v`.
    pub fn leftover_degree(&self, g: &Graph, v: VertexId) -> usize {
        g.incident(v)
            .iter()
            .filter(|e| self.labels[e.0].is_none())
            .count()
    }

    /// The nontrivial components of `G[M1 ∪ M2]`: paths and even cycles.
    pub fn union_components(&self, g: &Graph) -> Vec<UnionComponent> {
        let matched = |e: EdgeId| self.labels[e.0].is_some();
        walk_components(g, matched)
    }

    pub fn leftover_graph(&self, g: &Graph) -> LeftoverGraph {
        LeftoverGraph::new(g, self)
    }
}

/// A path or cycle component of `G[M1 ∪ M2]`, listed in walk order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionComponent {
    pub edges: Vec<EdgeId>,
    /// For a path, `edges.len() + 1` vertices from end to end; for a cycle,
    /// `edges.len()` vertices with the closing edge implied.
    pub vertices: Vec<VertexId>,
    pub cycle: bool,
}

impl UnionComponent {
    pub fn ends(&self) -> Option<(VertexId, VertexId)> {
        if self.cycle {
            None
        } else {
            Some((
                self.vertices[0],
                *self.vertices.last().expect("paths have vertices"),
            ))
        }
    }
}

/// Walks the components of the subgraph of `g` formed by edges accepted by
/// `keep`. Requires max degree two in that subgraph.
pub(crate) fn walk_components(g: &Graph, keep: impl Fn(EdgeId) -> bool) -> Vec<UnionComponent> {
    let kept_at = |v: VertexId| -> Vec<EdgeId> {
        g.incident(v).iter().copied().filter(|&e| keep(e)).collect()
    };
    let mut used = vec![false; g.m()];
    let mut out = Vec::new();

    let walk =
        |start: VertexId, first: EdgeId, used: &mut Vec<bool>| -> (Vec<EdgeId>, Vec<VertexId>) {
            let mut edges = vec![first];
            let mut vertices = vec![start];
            used[first.0] = true;
            let mut at = g.opposite(first, start);
            loop {
                vertices.push(at);
                let next = kept_at(at).into_iter().find(|e| !used[e.0]);
                match next {
                    Some(e) => {
                        used[e.0] = true;
                        edges.push(e);
                        at = g.opposite(e, at);
                    }
                    None => break,
                }
            }
            (edges, vertices)
        };

    for v in 0..g.n() {
        let v = VertexId(v);
        let inc = kept_at(v);
        if inc.len() == 1 && !used[inc[0].0] {
            let (edges, vertices) = walk(v, inc[0], &mut used);
            out.push(UnionComponent {
                edges,
                vertices,
                cycle: false,
            });
        }
    }
    for e in g.edge_ids() {
        if keep(e) && !used[e.0] {
            let (start, _) = g.endpoints(e);
            let (edges, mut vertices) = walk(start, e, &mut used);
            // The walk returns to `start`; drop the repeated vertex.
            vertices.pop();
            out.push(UnionComponent {
                edges,
                vertices,
                cycle: true,
            });
        }
    }
    out.sort_by_key(|c| c.edges.iter().min().copied());
    out
}

/// One connected component of the leftover graph (isolated vertices omitted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftoverComponent {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub kind: ComponentKind,
}

/// `G - M1 - M2` and its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftoverGraph {
    pub edges: Vec<EdgeId>,
    pub components: Vec<LeftoverComponent>,
    /// Component index of every vertex with a leftover edge.
    pub component_of: Vec<Option<usize>>,
}

impl LeftoverGraph {
    pub fn new(g: &Graph, pair: &MatchingPair) -> LeftoverGraph {
        let edges = pair.leftover();
        let mut component_of = vec![None; g.n()];
        let mut components = Vec::new();
        for start in 0..g.n() {
            if component_of[start].is_some() || pair.leftover_degree(g, VertexId(start)) == 0 {
                continue;
            }
            let idx = components.len();
            let mut vertices = vec![VertexId(start)];
            let mut comp_edges = Vec::new();
            component_of[start] = Some(idx);
            let mut i = 0;
            while i < vertices.len() {
                let v = vertices[i];
                for &e in g.incident(v) {
                    if pair.is_matched(e) {
                        continue;
                    }
                    let w = g.opposite(e, v);
                    if v < w {
                        comp_edges.push(e);
                    }
                    if component_of[w.0].is_none() {
                        component_of[w.0] = Some(idx);
                        vertices.push(w);
                    }
                }
                i += 1;
            }
            vertices.sort_unstable();
            comp_edges.sort_unstable();
            let kind = classify_shape(g, &vertices, &comp_edges);
            components.push(LeftoverComponent {
                vertices,
                edges: comp_edges,
                kind,
            });
        }
        LeftoverGraph {
            edges,
            components,
            component_of,
        }
    }
}
