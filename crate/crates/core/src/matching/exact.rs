use super::{walk_components, MatchingPair, Side};
use crate::graph::{Graph, VertexId};
use crate::{Error, Result};

/// Largest edge count accepted by [`exact_max_union`].
pub const EXACT_UNION_EDGE_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactUnion {
    pub pair: MatchingPair,
    /// The certified maximum of `|M1 ∪ M2|`.
    pub union_size: usize,
    /// Fewest H edges among pairs reaching `union_size`.
    pub h_edges: usize,
}

/// A maximum union of two disjoint matchings, with H edges minimized among
/// the optima.
///
/// An edge set is such a union exactly when it has maximum degree two and
/// no odd cycle, so the search branches on edges in id order, keeping that
/// invariant, and bounds by the remaining degree slack.
pub fn exact_max_union(g: &Graph) -> Result<ExactUnion> {
    g.require_subcubic()?;
    if g.m() > EXACT_UNION_EDGE_LIMIT {
        return Err(Error::TooLarge {
            edges: g.m(),
            limit: EXACT_UNION_EDGE_LIMIT,
        });
    }
    let near: Vec<u32> = g
        .edge_ids()
        .map(|e| {
            g.edges_within(e, 2)
                .iter()
                .fold(0u32, |acc, (f, _)| acc | (1 << f.0))
        })
        .collect();
    let mut search = Search {
        g,
        near,
        deg: vec![0; g.n()],
        chosen: 0,
        excluded: 0,
        best: None,
    };
    search.branch(0, 0, 0);
    let (mask, union_size, h_edges) = search.best.expect("the empty set is feasible");

    let inside = |e: crate::graph::EdgeId| mask & (1 << e.0) != 0;
    let mut labels = vec![None; g.m()];
    for comp in walk_components(g, inside) {
        for (i, e) in comp.edges.iter().enumerate() {
            labels[e.0] = Some(if i % 2 == 0 {
                Side::First
            } else {
                Side::Second
            });
        }
    }
    Ok(ExactUnion {
        pair: MatchingPair::from_labels(g, labels)?,
        union_size,
        h_edges,
    })
}

struct Search<'g> {
    g: &'g Graph,
    near: Vec<u32>,
    deg: Vec<u8>,
    chosen: u32,
    excluded: u32,
    best: Option<(u32, usize, usize)>,
}

impl Search<'_> {
    fn branch(&mut self, next: usize, size: usize, h: usize) {
        let m = self.g.m();
        if let Some((_, best_size, best_h)) = self.best {
            let bound = size + self.upper_bound(next);
            if bound < best_size || (bound == best_size && h >= best_h) {
                return;
            }
        }
        if next == m {
            self.best = Some((self.chosen, size, h));
            return;
        }
        let (u, v) = self.g.endpoints(crate::graph::EdgeId(next));
        let bit = 1u32 << next;
        if self.deg[u.0] < 2 && self.deg[v.0] < 2 && !self.closes_odd_cycle(u, v) {
            self.deg[u.0] += 1;
            self.deg[v.0] += 1;
            self.chosen |= bit;
            self.branch(next + 1, size + 1, h);
            self.chosen &= !bit;
            self.deg[u.0] -= 1;
            self.deg[v.0] -= 1;
        }
        let added = (self.near[next] & self.excluded).count_ones() as usize;
        self.excluded |= bit;
        self.branch(next + 1, size, h + added);
        self.excluded &= !bit;
    }

    /// Overestimates how many edges from `next` on can still join the union:
    /// both the number of addable edges and half the usable degree slack.
    fn upper_bound(&self, next: usize) -> usize {
        let mut addable = 0;
        let mut reach = vec![0u8; self.g.n()];
        for i in next..self.g.m() {
            let (u, v) = self.g.endpoints(crate::graph::EdgeId(i));
            if self.deg[u.0] < 2 && self.deg[v.0] < 2 {
                addable += 1;
                reach[u.0] += 1;
                reach[v.0] += 1;
            }
        }
        let slack: usize = reach
            .iter()
            .zip(&self.deg)
            .map(|(&r, &d)| usize::from(r.min(2 - d)))
            .sum();
        addable.min(slack / 2)
    }

    /// Whether adding `uv` to the chosen set closes an odd cycle.
    fn closes_odd_cycle(&self, u: VertexId, v: VertexId) -> bool {
        let mut prev_edge = None;
        let mut at = u;
        let mut steps = 0;
        loop {
            let next = self
                .g
                .incident(at)
                .iter()
                .copied()
                .find(|&e| self.chosen & (1 << e.0) != 0 && Some(e) != prev_edge);
            let Some(e) = next else { return false };
            at = self.g.opposite(e, at);
            steps += 1;
            prev_edge = Some(e);
            if at == v {
                return steps % 2 == 0;
            }
            if at == u {
                return false;
            }
        }
    }
}
