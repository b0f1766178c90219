//! The conflict graph H on leftover edges and its exact colouring.
//!
//! Two leftover edges conflict when their edge distance is at most two, so a
//! proper colouring of H splits the leftover edges into induced matchings.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::graph::{EdgeId, Graph};
use crate::matching::MatchingPair;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictGraph {
    vertices: Vec<EdgeId>,
    adjacency: Vec<Vec<usize>>,
    index: HashMap<EdgeId, usize>,
}

impl ConflictGraph {
    /// H for `pair`: one vertex per leftover edge, in edge id order.
    pub fn build(g: &Graph, pair: &MatchingPair) -> ConflictGraph {
        let vertices = pair.leftover();
        let index: HashMap<EdgeId, usize> =
            vertices.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let adjacency = vertices
            .iter()
            .map(|&e| {
                g.edges_within(e, 2)
                    .into_iter()
                    .filter_map(|(f, _)| index.get(&f).copied())
                    .collect()
            })
            .collect();
        ConflictGraph {
            vertices,
            adjacency,
            index,
        }
    }

    /// An abstract conflict graph, mainly for testing the colourer. Vertex
    /// `i` stands for `EdgeId(i)`.
    pub fn from_parts(len: usize, edges: &[(usize, usize)]) -> Result<ConflictGraph> {
        let mut adjacency = vec![Vec::new(); len];
        for &(a, b) in edges {
            if a >= len || b >= len || a == b {
                return Err(Error::InvalidArgument(format!(
                    "bad conflict edge ({a}, {b})"
                )));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let vertices: Vec<EdgeId> = (0..len).map(EdgeId).collect();
        let index = vertices.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Ok(ConflictGraph {
            vertices,
            adjacency,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The host edge behind each vertex.
    pub fn vertices(&self) -> &[EdgeId] {
        &self.vertices
    }

    pub fn index_of(&self, e: EdgeId) -> Option<usize> {
        self.index.get(&e).copied()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    /// Adjacency keyed by host edge, for serialization.
    pub fn adjacency_map(&self) -> BTreeMap<EdgeId, Vec<EdgeId>> {
        self.adjacency
            .iter()
            .enumerate()
            .map(|(i, list)| {
                (
                    self.vertices[i],
                    list.iter().map(|&j| self.vertices[j]).collect(),
                )
            })
            .collect()
    }
}

pub fn build_conflict_graph(g: &Graph, pair: &MatchingPair) -> ConflictGraph {
    ConflictGraph::build(g, pair)
}

/// Unordered triples of pairwise adjacent vertices.
pub fn triangle_count(h: &ConflictGraph) -> usize {
    let mut count = 0;
    for i in 0..h.len() {
        let up: Vec<usize> = h.neighbors(i).iter().copied().filter(|&j| j > i).collect();
        for (a, &j) in up.iter().enumerate() {
            count += up[a + 1..]
                .iter()
                .filter(|&&k| h.are_adjacent(j, k))
                .count();
        }
    }
    count
}

/// Colour per conflict-graph vertex, each in `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexColoring {
    pub k: usize,
    pub colors: Vec<usize>,
}

impl VertexColoring {
    pub fn is_proper(&self, h: &ConflictGraph) -> bool {
        self.colors.len() == h.len()
            && self.colors.iter().all(|&c| c < self.k)
            && h.edges()
                .iter()
                .all(|&(i, j)| self.colors[i] != self.colors[j])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringOutcome {
    Sat {
        coloring: VertexColoring,
        nodes: u64,
    },
    /// The full search tree was exhausted.
    Unsat { nodes: u64 },
}

impl ColoringOutcome {
    pub fn nodes(&self) -> u64 {
        match self {
            ColoringOutcome::Sat { nodes, .. } | ColoringOutcome::Unsat { nodes } => *nodes,
        }
    }

    pub fn coloring(&self) -> Option<&VertexColoring> {
        match self {
            ColoringOutcome::Sat { coloring, .. } => Some(coloring),
            ColoringOutcome::Unsat { .. } => None,
        }
    }
}

/// Decides `k`-colourability by backtracking in DSATUR order. A colour not
/// yet in use is only tried once per node (the smallest unused one).
pub fn color_exact(h: &ConflictGraph, k: usize) -> Result<ColoringOutcome> {
    color_with_budget(h, k, u64::MAX).map(|o| o.expect("unbounded search always decides"))
}

/// As [`color_exact`], giving up with `None` after `budget` search nodes.
pub fn color_with_budget(
    h: &ConflictGraph,
    k: usize,
    budget: u64,
) -> Result<Option<ColoringOutcome>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let n = h.len();
    let mut state = Dsatur {
        h,
        k: k.min(n.max(1)),
        color: vec![usize::MAX; n],
        seen: vec![vec![0u32; k.min(n.max(1))]; n],
        saturation: vec![0; n],
        nodes: 0,
        budget,
    };
    let found = state.search(0, 0);
    let nodes = state.nodes;
    Ok(match found {
        None => None,
        Some(true) => Some(ColoringOutcome::Sat {
            coloring: VertexColoring {
                k,
                colors: state.color,
            },
            nodes,
        }),
        Some(false) => Some(ColoringOutcome::Unsat { nodes }),
    })
}

struct Dsatur<'h> {
    h: &'h ConflictGraph,
    k: usize,
    color: Vec<usize>,
    /// `seen[v][c]`: coloured neighbours of `v` with colour `c`.
    seen: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Dsatur<'_> {
    fn pick(&self) -> Option<usize> {
        let uncolored_degree = |v: usize| {
            self.h
                .neighbors(v)
                .iter()
                .filter(|&&w| self.color[w] == usize::MAX)
                .count()
        };
        (0..self.h.len())
            .filter(|&v| self.color[v] == usize::MAX)
            .max_by_key(|&v| {
                (
                    self.saturation[v],
                    uncolored_degree(v),
                    std::cmp::Reverse(v),
                )
            })
    }

    fn set(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for &w in self.h.neighbors(v) {
            self.seen[w][c] += 1;
            if self.seen[w][c] == 1 {
                self.saturation[w] += 1;
            }
        }
    }

    fn unset(&mut self, v: usize, c: usize) {
        self.color[v] = usize::MAX;
        for &w in self.h.neighbors(v) {
            self.seen[w][c] -= 1;
            if self.seen[w][c] == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    /// `None` when the node budget ran out.
    fn search(&mut self, colored: usize, used: usize) -> Option<bool> {
        if self.nodes >= self.budget {
            return None;
        }
        self.nodes += 1;
        if colored == self.h.len() {
            return Some(true);
        }
        let v = self.pick().expect("an uncoloured vertex remains");
        if self.saturation[v] >= self.k {
            return Some(false);
        }
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.seen[v][c] > 0 {
                continue;
            }
            self.set(v, c);
            match self.search(colored + 1, used.max(c + 1)) {
                Some(false) => self.unset(v, c),
                decided => return decided,
            }
        }
        Some(false)
    }
}
