//! Simple undirected graphs with stable edge identifiers.
//!
//! Edges are numbered by their sorted endpoint pair, so two graphs built from
//! the same edge set always agree on `EdgeId`s. Every solver in the crate
//! iterates edges in that order, which keeps traces reproducible.

mod embed;
mod generators;
mod graph6;
mod parse;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use embed::{cubic_embed, CubicEmbedding};
pub use generators::{generate_named, random_cubic, Family};
pub use graph6::{parse_graph6, parse_graph6_lines, to_graph6};
pub use parse::parse_edge_list;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An immutable simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<VertexId>>,
    incident: Vec<Vec<EdgeId>>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in pairs {
            if u == v {
                return Err(Error::Loop { line: 0, vertex: u });
            }
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();

        let mut adjacency = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(list.len());
        for (i, &(u, v)) in list.iter().enumerate() {
            adjacency[u].push(VertexId(v));
            adjacency[v].push(VertexId(u));
            incident[u].push(EdgeId(i));
            incident[v].push(EdgeId(i));
            edges.push((VertexId(u), VertexId(v)));
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Graph {
            n,
            adjacency,
            incident,
            edges,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of `e`, smaller first. Panics on an out-of-range id.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.0]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (EdgeId, (VertexId, VertexId))> + '_ {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, &uv)| (EdgeId(i), uv))
    }

    pub fn edge_ids(&self) -> impl ExactSizeIterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v.0]
    }

    /// Edges incident to `v`, in increasing id order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.0].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_subcubic(&self) -> bool {
        self.max_degree() <= 3
    }

    pub fn is_cubic(&self) -> bool {
        self.adjacency.iter().all(|a| a.len() == 3)
    }

    pub fn require_subcubic(&self) -> Result<()> {
        match self.adjacency.iter().position(|a| a.len() > 3) {
            Some(v) => Err(Error::NotSubcubic {
                vertex: v,
                degree: self.adjacency[v].len(),
            }),
            None => Ok(()),
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e.0 < self.edges.len() {
            Ok(())
        } else {
            Err(Error::EdgeOutOfRange(e.0))
        }
    }

    /// The edge joining `u` and `v`, if any.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if u.0 >= self.n || v.0 >= self.n {
            return None;
        }
        self.incident[u.0].iter().copied().find(|&e| {
            let (a, b) = self.edges[e.0];
            (a == u && b == v) || (a == v && b == u)
        })
    }

    /// The endpoint of `e` other than `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e.0];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Connected; the empty graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        self.vertex_distances(&[VertexId(0)])
            .iter()
            .all(Option::is_some)
    }

    /// Multi-source BFS distances; `None` marks unreachable vertices.
    pub fn vertex_distances(&self, sources: &[VertexId]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s.0].is_none() {
                dist[s.0] = Some(0);
                queue.push_back(s.0);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adjacency[u] {
                if dist[w.0].is_none() {
                    dist[w.0] = Some(du + 1);
                    queue.push_back(w.0);
                }
            }
        }
        dist
    }

    /// Largest vertex distance, or `None` if the graph is disconnected or empty.
    pub fn vertex_diameter(&self) -> Option<usize> {
        if !self.is_connected() {
            return None;
        }
        (0..self.n)
            .map(|v| {
                self.vertex_distances(&[VertexId(v)])
                    .into_iter()
                    .map(|d| d.unwrap_or(0))
                    .max()
                    .unwrap_or(0)
            })
            .max()
    }

    /// Line-graph distance between two edges: 0 for equal edges, otherwise one
    /// more than the closest pair of endpoints. `None` means the edges lie in
    /// different components.
    pub fn edge_distance(&self, e1: EdgeId, e2: EdgeId) -> Result<Option<usize>> {
        self.check_edge(e1)?;
        self.check_edge(e2)?;
        if e1 == e2 {
            return Ok(Some(0));
        }
        let (a, b) = self.edges[e1.0];
        let (c, d) = self.edges[e2.0];
        let dist = self.vertex_distances(&[a, b]);
        Ok(match (dist[c.0], dist[d.0]) {
            (Some(x), Some(y)) => Some(1 + x.min(y)),
            (Some(x), None) | (None, Some(x)) => Some(1 + x),
            (None, None) => None,
        })
    }

    /// All edges `f != e` with `edge_distance(e, f) <= radius`, paired with
    /// that distance and sorted by edge id. Runs a BFS of depth `radius - 1`
    /// from the endpoints of `e`.
    pub fn edges_within(&self, e: EdgeId, radius: usize) -> Vec<(EdgeId, usize)> {
        if radius == 0 {
            return Vec::new();
        }
        let (a, b) = self.edges[e.0];
        let mut depth: HashMap<usize, usize> = HashMap::new();
        depth.insert(a.0, 0);
        depth.insert(b.0, 0);
        let mut frontier = vec![a.0, b.0];
        let mut found: HashMap<usize, usize> = HashMap::new();
        for level in 0..radius {
            // Every edge touching a vertex at depth `level` is within `level + 1`.
            let mut next = Vec::new();
            for &u in &frontier {
                for &f in &self.incident[u] {
                    let w = self.opposite(f, VertexId(u));
                    if f.0 != e.0 {
                        found.entry(f.0).or_insert(level + 1);
                    }
                    if level + 1 < radius && !depth.contains_key(&w.0) {
                        depth.insert(w.0, level + 1);
                        next.push(w.0);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<(EdgeId, usize)> =
            found.into_iter().map(|(f, d)| (EdgeId(f), d)).collect();
        out.sort_unstable();
        out
    }

    /// The edge list as `u v` lines, in `EdgeId` order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", u.0, v.0));
        }
        out
    }

    /// Edge pairs as plain integers, in `EdgeId` order.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(u, v)| (u.0, v.0)).collect()
    }
}
