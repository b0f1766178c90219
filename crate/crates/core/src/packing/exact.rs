use super::{EdgeColoring, PackingSequence};
use crate::graph::Graph;

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Sat {
        coloring: EdgeColoring,
        nodes: u64,
    },
    /// The whole search tree was exhausted without a colouring.
    Unsat {
        nodes: u64,
    },
    /// The node budget ran out first.
    Unknown {
        nodes: u64,
    },
}

impl SolveOutcome {
    pub fn nodes(&self) -> u64 {
        match self {
            SolveOutcome::Sat { nodes, .. }
            | SolveOutcome::Unsat { nodes }
            | SolveOutcome::Unknown { nodes } => *nodes,
        }
    }

    pub fn coloring(&self) -> Option<&EdgeColoring> {
        match self {
            SolveOutcome::Sat { coloring, .. } => Some(coloring),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            SolveOutcome::Sat { .. } => "sat",
            SolveOutcome::Unsat { .. } => "unsat",
            SolveOutcome::Unknown { .. } => "unknown",
        }
    }
}

/// Decides whether `g` has an `s`-packing edge-colouring by backtracking.
///
/// Edges are coloured in smallest-last order of the line graph. After each
/// assignment every touched edge must keep at least one admissible class.
/// Among classes sharing a parameter, only the lowest unused one may be
/// opened, which removes relabelled duplicates from the tree.
pub fn solve_exact(g: &Graph, s: &PackingSequence, budget: u64) -> SolveOutcome {
    let m = g.m();
    let k = s.len();
    let reach_max = *s.values().last().expect("sequences are non-empty") as usize;
    let near: Vec<Vec<(usize, usize)>> = g
        .edge_ids()
        .map(|e| {
            g.edges_within(e, reach_max)
                .into_iter()
                .map(|(f, d)| (f.0, d))
                .collect()
        })
        .collect();
    // First class of the equal-parameter run each class belongs to.
    let orbit_start: Vec<usize> = (0..k)
        .map(|i| {
            (0..=i)
                .rev()
                .take_while(|&j| s.get(j) == s.get(i))
                .last()
                .unwrap_or(i)
        })
        .collect();

    let mut state = State {
        s: s.values().iter().map(|&v| v as usize).collect(),
        near,
        orbit_start,
        order: line_graph_smallest_last(g),
        class: vec![usize::MAX; m],
        blocked: vec![vec![0; m]; k],
        used: vec![0; k],
        nodes: 0,
        budget,
    };
    match state.search(0) {
        Some(true) => SolveOutcome::Sat {
            coloring: EdgeColoring::from_assignment(state.class),
            nodes: state.nodes,
        },
        Some(false) => SolveOutcome::Unsat { nodes: state.nodes },
        None => SolveOutcome::Unknown { nodes: state.nodes },
    }
}

/// Smallest-last vertex order of the line graph: repeatedly strip a
/// minimum-degree edge, then reverse.
fn line_graph_smallest_last(g: &Graph) -> Vec<usize> {
    let m = g.m();
    let adj: Vec<Vec<usize>> = g
        .edge_ids()
        .map(|e| g.edges_within(e, 1).into_iter().map(|(f, _)| f.0).collect())
        .collect();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut gone = vec![false; m];
    let mut stripped = Vec::with_capacity(m);
    for _ in 0..m {
        let e = (0..m)
            .filter(|&e| !gone[e])
            .min_by_key(|&e| (degree[e], e))
            .expect("edges remain");
        gone[e] = true;
        stripped.push(e);
        for &f in &adj[e] {
            if !gone[f] {
                degree[f] -= 1;
            }
        }
    }
    stripped.reverse();
    stripped
}

struct State {
    s: Vec<usize>,
    near: Vec<Vec<(usize, usize)>>,
    orbit_start: Vec<usize>,
    order: Vec<usize>,
    class: Vec<usize>,
    /// `blocked[c][e]`: coloured edges of class `c` too close to `e`.
    blocked: Vec<Vec<u32>>,
    used: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl State {
    fn openable(&self, c: usize) -> bool {
        let start = self.orbit_start[c];
        c == start || self.used[c - 1] > 0 || self.used[c] > 0
    }

    fn assign(&mut self, e: usize, c: usize) {
        self.class[e] = c;
        self.used[c] += 1;
        let reach = self.s[c];
        for &(f, d) in &self.near[e] {
            if d <= reach {
                self.blocked[c][f] += 1;
            }
        }
    }

    fn unassign(&mut self, e: usize, c: usize) {
        self.class[e] = usize::MAX;
        self.used[c] -= 1;
        let reach = self.s[c];
        for &(f, d) in &self.near[e] {
            if d <= reach {
                self.blocked[c][f] -= 1;
            }
        }
    }

    /// Every uncoloured edge near `e` still has some class open to it.
    fn neighbours_alive(&self, e: usize, c: usize) -> bool {
        let reach = self.s[c];
        self.near[e].iter().all(|&(f, d)| {
            d > reach
                || self.class[f] != usize::MAX
                || (0..self.s.len()).any(|j| self.blocked[j][f] == 0)
        })
    }

    fn search(&mut self, depth: usize) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        let e = self.order[depth];
        for c in 0..self.s.len() {
            if self.blocked[c][e] > 0 || !self.openable(c) {
                continue;
            }
            if self.nodes >= self.budget {
                return None;
            }
            self.nodes += 1;
            self.assign(e, c);
            if self.neighbours_alive(e, c) {
                match self.search(depth + 1) {
                    Some(false) => {}
                    decided => return decided,
                }
            }
            self.unassign(e, c);
        }
        Some(false)
    }
}
