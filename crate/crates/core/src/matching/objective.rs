use std::cmp::Ordering;

use serde::Serialize;

use super::{MatchingPair, Side};
use crate::audit::ComponentKind;
use crate::conflict::{build_conflict_graph, triangle_count};
use crate::graph::{Graph, VertexId};

/// Quality of a matching pair. `a > b` means `a` is the better pair: larger
/// union first, then fewer H edges, fewer P4 components, fewer H triangles
/// and fewer paired P3s, in that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ObjectiveTuple {
    pub union_size: usize,
    pub h_edges: usize,
    pub p4_count: usize,
    pub h_triangles: usize,
    pub paired_p3_count: usize,
}

impl Ord for ObjectiveTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.union_size
            .cmp(&other.union_size)
            .then_with(|| other.h_edges.cmp(&self.h_edges))
            .then_with(|| other.p4_count.cmp(&self.p4_count))
            .then_with(|| other.h_triangles.cmp(&self.h_triangles))
            .then_with(|| other.paired_p3_count.cmp(&self.paired_p3_count))
    }
}

impl PartialOrd for ObjectiveTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Computes the objective from scratch through the conflict graph.
pub fn evaluate(g: &Graph, pair: &MatchingPair) -> ObjectiveTuple {
    let h = build_conflict_graph(g, pair);
    let leftover = pair.leftover_graph(g);
    let p4_count = leftover
        .components
        .iter()
        .filter(|c| c.kind == ComponentKind::P4)
        .count();

    let p3_middle = |v: VertexId| -> Option<usize> {
        let idx = leftover.component_of[v.0]?;
        let comp = &leftover.components[idx];
        (comp.kind == ComponentKind::P3 && pair.leftover_degree(g, v) == 2).then_some(idx)
    };
    let paired_p3_count = g
        .edges()
        .filter(|&(e, _)| pair.is_matched(e))
        .filter(|&(_, (u, v))| match (p3_middle(u), p3_middle(v)) {
            (Some(a), Some(b)) => a != b,
            _ => false,
        })
        .count();

    ObjectiveTuple {
        union_size: pair.union_size(),
        h_edges: h.edge_count(),
        p4_count,
        h_triangles: triangle_count(&h),
        paired_p3_count,
    }
}

/// Objective evaluation on raw labels, with the distance-2 neighbourhoods of
/// every edge precomputed. Used in the inner loop of the local search.
pub(crate) struct Scorer<'g> {
    g: &'g Graph,
    near: Vec<Vec<usize>>,
}

impl<'g> Scorer<'g> {
    pub fn new(g: &'g Graph) -> Scorer<'g> {
        let near = g
            .edge_ids()
            .map(|e| g.edges_within(e, 2).into_iter().map(|(f, _)| f.0).collect())
            .collect();
        Scorer { g, near }
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    fn adjacent(&self, e: usize, f: usize) -> bool {
        self.near[e].binary_search(&f).is_ok()
    }

    pub fn objective(&self, labels: &[Option<Side>]) -> ObjectiveTuple {
        let g = self.g;
        let free = |e: usize| labels[e].is_none();
        let mut union_size = 0;
        let mut h_edges = 0;
        let mut h_triangles = 0;
        let mut up = Vec::new();
        for e in 0..labels.len() {
            if !free(e) {
                union_size += 1;
                continue;
            }
            up.clear();
            up.extend(self.near[e].iter().copied().filter(|&f| f > e && free(f)));
            h_edges += up.len();
            for (i, &f) in up.iter().enumerate() {
                h_triangles += up[i + 1..].iter().filter(|&&k| self.adjacent(f, k)).count();
            }
        }

        // Leftover components: edge count, vertex count, max degree.
        let n = g.n();
        let mut comp = vec![usize::MAX; n];
        let mut deg = vec![0usize; n];
        for (e, (u, v)) in g.edges() {
            if free(e.0) {
                deg[u.0] += 1;
                deg[v.0] += 1;
            }
        }
        let mut shapes: Vec<(usize, usize, usize)> = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX || deg[s] == 0 {
                continue;
            }
            let id = shapes.len();
            let (mut verts, mut degsum, mut maxdeg) = (0, 0, 0);
            comp[s] = id;
            stack.push(s);
            while let Some(v) = stack.pop() {
                verts += 1;
                degsum += deg[v];
                maxdeg = maxdeg.max(deg[v]);
                for &e in g.incident(VertexId(v)) {
                    if !free(e.0) {
                        continue;
                    }
                    let w = g.opposite(e, VertexId(v)).0;
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            shapes.push((degsum / 2, verts, maxdeg));
        }
        let p4_count = shapes.iter().filter(|&&s| s == (3, 4, 2)).count();
        let p3_mid = |v: usize| deg[v] == 2 && shapes[comp[v]] == (2, 3, 2);
        let paired_p3_count = g
            .edges()
            .filter(|&(e, (u, v))| {
                !free(e.0) && p3_mid(u.0) && p3_mid(v.0) && comp[u.0] != comp[v.0]
            })
            .count();

        ObjectiveTuple {
            union_size,
            h_edges,
            p4_count,
            h_triangles,
            paired_p3_count,
        }
    }

    /// Change in the number of H edges when the leftover edges `leaving` get
    /// matched and the matched edges `entering` become leftover. The two
    /// lists must be disjoint and respect the current labels.
    pub fn h_delta(&self, labels: &[Option<Side>], leaving: &[usize], entering: &[usize]) -> i64 {
        let kept = |f: usize| labels[f].is_none() && !leaving.contains(&f);
        let towards_kept = |e: usize| self.near[e].iter().filter(|&&f| kept(f)).count() as i64;
        let within = |set: &[usize]| -> i64 {
            let mut c = 0;
            for (i, &a) in set.iter().enumerate() {
                c += set[i + 1..]
                    .iter()
                    .filter(|&&b| self.adjacent(a, b))
                    .count() as i64;
            }
            c
        };
        let gained: i64 = entering.iter().map(|&y| towards_kept(y)).sum::<i64>() + within(entering);
        let lost: i64 = leaving.iter().map(|&x| towards_kept(x)).sum::<i64>() + within(leaving);
        gained - lost
    }
}
