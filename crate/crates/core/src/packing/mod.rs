//! S-packing edge-colourings: sequences, colourings, verification and
//! solvers.
//!
//! Class `i` of a colouring for the sequence `(s_1, ..., s_k)` may only hold
//! edges that are pairwise at edge distance at least `s_i + 1`. With `s = 1`
//! a class is a matching, with `s = 2` an induced matching.

mod exact;
mod pipeline;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, Graph};
use crate::{Error, Result};

pub use exact::{solve_exact, SolveOutcome, DEFAULT_NODE_BUDGET};
pub use pipeline::{assemble, solve_pipeline, PipelineConfig, PipelineOutcome};

/// A non-decreasing sequence of positive class parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PackingSequence {
    values: Vec<u32>,
}

impl PackingSequence {
    pub fn new(values: Vec<u32>) -> Result<PackingSequence> {
        if values.is_empty() {
            return Err(Error::Sequence(
                "a sequence needs at least one class".into(),
            ));
        }
        if values.contains(&0) {
            return Err(Error::Sequence("class parameters must be positive".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Sequence(format!("{values:?} is not non-decreasing")));
        }
        Ok(PackingSequence { values })
    }

    /// `ones` matchings followed by `twos` induced matchings.
    pub fn ones_twos(ones: usize, twos: usize) -> Result<PackingSequence> {
        let mut values = vec![1; ones];
        values.extend(std::iter::repeat_n(2, twos));
        PackingSequence::new(values)
    }

    /// Parses `1^2,2^4`, `1,1,2,2,2,2` or a mix, optionally in parentheses.
    pub fn parse(text: &str) -> Result<PackingSequence> {
        let body = text.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        let mut values = Vec::new();
        for token in body.split(',') {
            let token = token.trim();
            let (base, count) = match token.split_once('^') {
                Some((b, c)) => (b.trim(), c.trim()),
                None => (token, "1"),
            };
            let bad = || Error::Sequence(format!("bad sequence token {token:?}"));
            let base: u32 = base.parse().map_err(|_| bad())?;
            let count: usize = count.parse().map_err(|_| bad())?;
            if count == 0 {
                return Err(bad());
            }
            values.extend(std::iter::repeat_n(base, count));
        }
        PackingSequence::new(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, class: usize) -> u32 {
        self.values[class]
    }
}

impl FromStr for PackingSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PackingSequence::parse(s)
    }
}

impl fmt::Display for PackingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for run in self.values.chunk_by(|a, b| a == b) {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if run.len() == 1 {
                write!(f, "{}", run[0])?;
            } else {
                write!(f, "{}^{}", run[0], run.len())?;
            }
        }
        Ok(())
    }
}

/// A total assignment of edges to class indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    class_of: Vec<usize>,
}

/// The colouring file format: edge ids per class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringRecord {
    pub classes: Vec<Vec<EdgeId>>,
}

impl EdgeColoring {
    /// `class_of[e]` is the class of edge `e`.
    pub fn from_assignment(class_of: Vec<usize>) -> EdgeColoring {
        EdgeColoring { class_of }
    }

    /// Builds a colouring from class lists; every edge of `g` must appear
    /// exactly once.
    pub fn from_classes(g: &Graph, classes: &[Vec<EdgeId>]) -> Result<EdgeColoring> {
        let mut class_of = vec![usize::MAX; g.m()];
        for (i, class) in classes.iter().enumerate() {
            for &e in class {
                g.check_edge(e)?;
                if class_of[e.0] != usize::MAX {
                    return Err(Error::Coloring(format!(
                        "{e} appears in more than one class"
                    )));
                }
                class_of[e.0] = i;
            }
        }
        if let Some(e) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::Coloring(format!(
                "partial colouring: {} has no class",
                EdgeId(e)
            )));
        }
        Ok(EdgeColoring { class_of })
    }

    pub fn class_of(&self, e: EdgeId) -> usize {
        self.class_of[e.0]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.class_of
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    /// Edge lists of classes `0..count`, each in id order.
    pub fn classes(&self, count: usize) -> Vec<Vec<EdgeId>> {
        let mut out = vec![Vec::new(); count];
        for (e, &c) in self.class_of.iter().enumerate() {
            if c < count {
                out[c].push(EdgeId(e));
            }
        }
        out
    }

    pub fn to_record(&self, count: usize) -> ColoringRecord {
        ColoringRecord {
            classes: self.classes(count),
        }
    }

    /// Pulls a colouring of a supergraph back along `edge_map`, which sends
    /// each edge of the subgraph to its image.
    pub fn restrict(&self, edge_map: &[EdgeId]) -> EdgeColoring {
        EdgeColoring {
            class_of: edge_map.iter().map(|e| self.class_of[e.0]).collect(),
        }
    }
}

/// Two edges of one class that are too close.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub class: usize,
    pub edges: (EdgeId, EdgeId),
    pub distance: usize,
    pub required: usize,
}

/// Every pair of same-class edges closer than the class allows, ordered by
/// class and then by edge ids. An empty list means the colouring is valid.
pub fn verify(g: &Graph, s: &PackingSequence, c: &EdgeColoring) -> Result<Vec<Violation>> {
    if c.len() != g.m() {
        return Err(Error::Coloring(format!(
            "colouring covers {} edges, graph has {}",
            c.len(),
            g.m()
        )));
    }
    if let Some(e) = c.class_of.iter().position(|&k| k >= s.len()) {
        return Err(Error::Coloring(format!(
            "{} uses class {} but the sequence has {} classes",
            EdgeId(e),
            c.class_of[e],
            s.len()
        )));
    }
    let mut out = Vec::new();
    for (class, members) in c.classes(s.len()).into_iter().enumerate() {
        let reach = s.get(class) as usize;
        for &e in &members {
            for (f, d) in g.edges_within(e, reach) {
                if f > e && c.class_of[f.0] == class {
                    out.push(Violation {
                        class,
                        edges: (e, f),
                        distance: d,
                        required: reach + 1,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Largest edge count accepted by the exhaustive matching searches.
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 24;

/// Size of a largest set of edges pairwise at distance at least three.
pub fn max_induced_matching(g: &Graph) -> Result<usize> {
    max_spread_set(g, 2)
}

/// Size of a largest matching, by the same exhaustive search.
pub fn max_matching_size(g: &Graph) -> Result<usize> {
    max_spread_set(g, 1)
}

/// Largest set of edges pairwise at distance greater than `reach`.
fn max_spread_set(g: &Graph, reach: usize) -> Result<usize> {
    if g.m() > EXHAUSTIVE_EDGE_LIMIT {
        return Err(Error::TooLarge {
            edges: g.m(),
            limit: EXHAUSTIVE_EDGE_LIMIT,
        });
    }
    let close: Vec<u32> = g
        .edge_ids()
        .map(|e| {
            g.edges_within(e, reach)
                .iter()
                .fold(0, |acc, (f, _)| acc | (1u32 << f.0))
        })
        .collect();
    let all = (1u32 << g.m()) - 1;
    let mut best = 0;
    independent(&close, all, 0, &mut best);
    Ok(best)
}

fn independent(close: &[u32], open: u32, size: usize, best: &mut usize) {
    if open == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + open.count_ones() as usize <= *best {
        return;
    }
    let e = open.trailing_zeros() as usize;
    let rest = open & !(1 << e);
    independent(close, rest & !close[e], size + 1, best);
    independent(close, rest, size, best);
}
