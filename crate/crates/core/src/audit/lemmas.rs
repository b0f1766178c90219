//! Structural predicates on the leftover graph, each evaluated literally on
//! the given pair. A violated predicate carries the offending subgraph.

use serde::Serialize;

use super::{ComponentKind, ViolationReason};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::matching::{LeftoverGraph, MatchingPair, NeighborhoodLimits};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Witness {
    fn new(mut vertices: Vec<VertexId>, mut edges: Vec<EdgeId>) -> Witness {
        vertices.sort_unstable();
        vertices.dedup();
        edges.sort_unstable();
        edges.dedup();
        Witness { vertices, edges }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredicateResult {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl PredicateResult {
    fn from(witness: Option<Witness>) -> PredicateResult {
        PredicateResult {
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairedP3 {
    pub count: usize,
    pub at_most_one: bool,
    pub pairs: Vec<Witness>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KindCounts {
    pub p2: usize,
    pub p3: usize,
    pub p4: usize,
    pub k13: usize,
    pub violation: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    #[serde(rename = "no_C1")]
    pub no_c1: PredicateResult,
    pub no_cycle: PredicateResult,
    pub no_long_path: PredicateResult,
    #[serde(rename = "no_K13_K13_link")]
    pub no_k13_k13_link: PredicateResult,
    #[serde(rename = "no_K13_P4_link")]
    pub no_k13_p4_link: PredicateResult,
    #[serde(rename = "no_P4_midP3_link")]
    pub no_p4_midp3_link: PredicateResult,
    #[serde(rename = "no_P4_at_all")]
    pub no_p4_at_all: PredicateResult,
    #[serde(rename = "paired_P3_pairs")]
    pub paired_p3: PairedP3,
    pub leaf_double_mid_link: PredicateResult,
    #[serde(rename = "chain_P3_P3_P3")]
    pub chain_p3_p3_p3: PredicateResult,
    pub two_leaves_two_mids: PredicateResult,
    pub counts: KindCounts,
    /// Set by callers that checked the pair for improving moves.
    pub switch_stable: Option<bool>,
    pub limits: Option<NeighborhoodLimits>,
}

impl LemmaReport {
    /// The predicates that switch-stability guarantees.
    pub fn hard_hold(&self) -> bool {
        self.no_c1.holds
            && self.no_cycle.holds
            && self.no_long_path.holds
            && self.no_k13_k13_link.holds
    }

    pub fn all_hold(&self) -> bool {
        self.violated().is_empty()
    }

    /// Names of the violated predicates, in report order.
    pub fn violated(&self) -> Vec<&'static str> {
        let checks = [
            ("no_C1", self.no_c1.holds),
            ("no_cycle", self.no_cycle.holds),
            ("no_long_path", self.no_long_path.holds),
            ("no_K13_K13_link", self.no_k13_k13_link.holds),
            ("no_K13_P4_link", self.no_k13_p4_link.holds),
            ("no_P4_midP3_link", self.no_p4_midp3_link.holds),
            ("no_P4_at_all", self.no_p4_at_all.holds),
            ("paired_P3_pairs", self.paired_p3.at_most_one),
            ("leaf_double_mid_link", self.leaf_double_mid_link.holds),
            ("chain_P3_P3_P3", self.chain_p3_p3_p3.holds),
            ("two_leaves_two_mids", self.two_leaves_two_mids.holds),
        ];
        checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| *name)
            .collect()
    }

    pub fn with_stability(mut self, limits: NeighborhoodLimits, stable: bool) -> LemmaReport {
        self.switch_stable = Some(stable);
        self.limits = Some(limits);
        self
    }
}

struct Ctx<'a> {
    g: &'a Graph,
    pair: &'a MatchingPair,
    lg: LeftoverGraph,
    deg: Vec<usize>,
}

impl Ctx<'_> {
    fn comp(&self, v: VertexId) -> Option<usize> {
        self.lg.component_of[v.0]
    }

    fn kind(&self, v: VertexId) -> Option<ComponentKind> {
        self.comp(v).map(|c| self.lg.components[c].kind)
    }

    fn in_p3(&self, v: VertexId) -> bool {
        self.kind(v) == Some(ComponentKind::P3)
    }

    fn p3_middle(&self, v: VertexId) -> bool {
        self.in_p3(v) && self.deg[v.0] == 2
    }

    fn p3_leaf(&self, v: VertexId) -> bool {
        self.in_p3(v) && self.deg[v.0] == 1
    }

    fn leftover_at(&self, v: VertexId) -> impl Iterator<Item = (EdgeId, VertexId)> + '_ {
        self.g
            .incident(v)
            .iter()
            .filter(|&&e| !self.pair.is_matched(e))
            .map(move |&e| (e, self.g.opposite(e, v)))
    }

    fn matched_at(&self, v: VertexId) -> impl Iterator<Item = (EdgeId, VertexId)> + '_ {
        self.g
            .incident(v)
            .iter()
            .filter(|&&e| self.pair.is_matched(e))
            .map(move |&e| (e, self.g.opposite(e, v)))
    }

    /// Matched edges in id order, once per orientation.
    fn links(&self) -> Vec<(EdgeId, VertexId, VertexId)> {
        let mut out = Vec::new();
        for (e, (u, v)) in self.g.edges() {
            if self.pair.is_matched(e) {
                out.push((e, u, v));
                out.push((e, v, u));
            }
        }
        out
    }

    /// The given components together with extra edges.
    fn witness(&self, comps: &[usize], extra: &[EdgeId]) -> Witness {
        let mut vertices = Vec::new();
        let mut edges = extra.to_vec();
        for &c in comps {
            vertices.extend_from_slice(&self.lg.components[c].vertices);
            edges.extend_from_slice(&self.lg.components[c].edges);
        }
        for &e in extra {
            let (u, v) = self.g.endpoints(e);
            vertices.extend([u, v]);
        }
        Witness::new(vertices, edges)
    }

    fn link_between(&self, first: ComponentKind, second: ComponentKind) -> Option<Witness> {
        self.links().into_iter().find_map(|(e, u, v)| {
            let (cu, cv) = (self.comp(u)?, self.comp(v)?);
            (cu != cv && self.kind(u) == Some(first) && self.kind(v) == Some(second))
                .then(|| self.witness(&[cu, cv], &[e]))
        })
    }

    fn no_c1(&self) -> Option<Witness> {
        for v in 0..self.g.n() {
            let v = VertexId(v);
            if self.deg[v.0] != 3 {
                continue;
            }
            let star: Vec<(EdgeId, VertexId)> = self.leftover_at(v).collect();
            for &(_, w) in &star {
                for (f, y) in self.leftover_at(w) {
                    if y != v && star.iter().all(|&(_, x)| x != y) {
                        let mut edges: Vec<EdgeId> = star.iter().map(|&(e, _)| e).collect();
                        edges.push(f);
                        let mut vertices: Vec<VertexId> = star.iter().map(|&(_, x)| x).collect();
                        vertices.extend([v, y]);
                        return Some(Witness::new(vertices, edges));
                    }
                }
            }
        }
        None
    }

    fn no_cycle(&self) -> Option<Witness> {
        let comp = self
            .lg
            .components
            .iter()
            .find(|c| c.kind == ComponentKind::Violation(ViolationReason::Cycle))?;
        // Grow a spanning forest; the first edge joining two reached vertices
        // closes a cycle through the forest path between them.
        let mut parent: std::collections::HashMap<VertexId, Option<(VertexId, EdgeId)>> =
            Default::default();
        let root = comp.vertices[0];
        parent.insert(root, None);
        let mut queue = std::collections::VecDeque::from([root]);
        let mut tree_edges = std::collections::HashSet::new();
        while let Some(u) = queue.pop_front() {
            for (e, w) in self.leftover_at(u) {
                if let std::collections::hash_map::Entry::Vacant(slot) = parent.entry(w) {
                    slot.insert(Some((u, e)));
                    tree_edges.insert(e);
                    queue.push_back(w);
                }
            }
        }
        let closing = comp
            .edges
            .iter()
            .copied()
            .find(|e| !tree_edges.contains(e))?;
        let (a, b) = self.g.endpoints(closing);
        let ancestors = |mut x: VertexId| {
            let mut path = vec![x];
            while let Some(Some((p, _))) = parent.get(&x) {
                x = *p;
                path.push(x);
            }
            path
        };
        let (pa, pb) = (ancestors(a), ancestors(b));
        let meet = *pa.iter().find(|x| pb.contains(x))?;
        let mut vertices = Vec::new();
        let mut edges = vec![closing];
        for start in [a, b] {
            let mut x = start;
            while x != meet {
                vertices.push(x);
                let (p, e) = parent[&x].expect("non-root vertices have parents");
                edges.push(e);
                x = p;
            }
        }
        vertices.push(meet);
        Some(Witness::new(vertices, edges))
    }

    fn no_long_path(&self) -> Option<Witness> {
        fn extend(ctx: &Ctx<'_>, vertices: &mut Vec<VertexId>, edges: &mut Vec<EdgeId>) -> bool {
            if edges.len() == 4 {
                return true;
            }
            let tip = *vertices.last().expect("paths start with a vertex");
            for (e, w) in ctx.leftover_at(tip) {
                if vertices.contains(&w) {
                    continue;
                }
                vertices.push(w);
                edges.push(e);
                if extend(ctx, vertices, edges) {
                    return true;
                }
                vertices.pop();
                edges.pop();
            }
            false
        }
        for v in 0..self.g.n() {
            let (mut vertices, mut edges) = (vec![VertexId(v)], Vec::new());
            if extend(self, &mut vertices, &mut edges) {
                return Some(Witness::new(vertices, edges));
            }
        }
        None
    }

    fn no_p4_midp3_link(&self) -> Option<Witness> {
        self.links().into_iter().find_map(|(e, u, v)| {
            if self.kind(u) == Some(ComponentKind::P4) && self.p3_middle(v) {
                Some(self.witness(&[self.comp(u)?, self.comp(v)?], &[e]))
            } else {
                None
            }
        })
    }

    fn paired_p3(&self) -> PairedP3 {
        let pairs: Vec<Witness> = self
            .links()
            .into_iter()
            .filter(|&(_, u, v)| {
                u < v && self.p3_middle(u) && self.p3_middle(v) && self.comp(u) != self.comp(v)
            })
            .filter_map(|(e, u, v)| Some(self.witness(&[self.comp(u)?, self.comp(v)?], &[e])))
            .collect();
        PairedP3 {
            count: pairs.len(),
            at_most_one: pairs.len() <= 1,
            pairs,
        }
    }

    /// A P3 leaf linked to the middle of a second P3 and to a third P3.
    fn leaf_double_mid_link(&self) -> Option<Witness> {
        for x in 0..self.g.n() {
            let x = VertexId(x);
            if !self.p3_leaf(x) {
                continue;
            }
            let a = self.comp(x)?;
            let links: Vec<(EdgeId, VertexId)> = self.matched_at(x).collect();
            for &(e1, y1) in &links {
                if !self.p3_middle(y1) || self.comp(y1) == Some(a) {
                    continue;
                }
                let b = self.comp(y1)?;
                for &(e2, y2) in &links {
                    if e2 != e1
                        && self.in_p3(y2)
                        && self.comp(y2) != Some(a)
                        && self.comp(y2) != Some(b)
                    {
                        return Some(self.witness(&[a, b, self.comp(y2)?], &[e1, e2]));
                    }
                }
            }
        }
        None
    }

    /// P3 middle `v` linked to leaf `w1` of another P3 whose middle `w` is
    /// linked to a further P3.
    fn chain_p3_p3_p3(&self) -> Option<Witness> {
        for (e, v, w1) in self.links() {
            if !self.p3_middle(v) || !self.p3_leaf(w1) || self.comp(v) == self.comp(w1) {
                continue;
            }
            let b = self.comp(w1)?;
            let w = *self.lg.components[b]
                .vertices
                .iter()
                .find(|&&x| self.deg[x.0] == 2)
                .expect("a P3 has a middle vertex");
            for (f, z) in self.matched_at(w) {
                if self.in_p3(z) && self.comp(z) != Some(b) {
                    return Some(self.witness(&[self.comp(v)?, b, self.comp(z)?], &[e, f]));
                }
            }
        }
        None
    }

    fn two_leaves_two_mids(&self) -> Option<Witness> {
        for (a, comp) in self.lg.components.iter().enumerate() {
            if comp.kind != ComponentKind::P3 {
                continue;
            }
            let leaves: Vec<VertexId> = comp
                .vertices
                .iter()
                .copied()
                .filter(|v| self.deg[v.0] == 1)
                .collect();
            let mid_links = |x: VertexId| -> Vec<(EdgeId, usize)> {
                self.matched_at(x)
                    .filter(|&(_, y)| self.p3_middle(y) && self.comp(y) != Some(a))
                    .filter_map(|(e, y)| Some((e, self.comp(y)?)))
                    .collect()
            };
            for (e1, b) in mid_links(leaves[0]) {
                for (e2, c) in mid_links(leaves[1]) {
                    if b != c {
                        return Some(self.witness(&[a, b, c], &[e1, e2]));
                    }
                }
            }
        }
        None
    }
}

/// Evaluates every structural predicate on `pair`. Stability is left unset.
pub fn check_lemmas(g: &Graph, pair: &MatchingPair) -> LemmaReport {
    let lg = pair.leftover_graph(g);
    let deg = (0..g.n())
        .map(|v| pair.leftover_degree(g, VertexId(v)))
        .collect();
    let ctx = Ctx { g, pair, lg, deg };

    let mut counts = KindCounts::default();
    for c in &ctx.lg.components {
        match c.kind {
            ComponentKind::P2 => counts.p2 += 1,
            ComponentKind::P3 => counts.p3 += 1,
            ComponentKind::P4 => counts.p4 += 1,
            ComponentKind::K13 => counts.k13 += 1,
            ComponentKind::Violation(_) => counts.violation += 1,
        }
    }
    let p4 = ctx
        .lg
        .components
        .iter()
        .position(|c| c.kind == ComponentKind::P4)
        .map(|c| ctx.witness(&[c], &[]));

    LemmaReport {
        no_c1: PredicateResult::from(ctx.no_c1()),
        no_cycle: PredicateResult::from(ctx.no_cycle()),
        no_long_path: PredicateResult::from(ctx.no_long_path()),
        no_k13_k13_link: PredicateResult::from(
            ctx.link_between(ComponentKind::K13, ComponentKind::K13),
        ),
        no_k13_p4_link: PredicateResult::from(
            ctx.link_between(ComponentKind::K13, ComponentKind::P4),
        ),
        no_p4_midp3_link: PredicateResult::from(ctx.no_p4_midp3_link()),
        no_p4_at_all: PredicateResult::from(p4),
        paired_p3: ctx.paired_p3(),
        leaf_double_mid_link: PredicateResult::from(ctx.leaf_double_mid_link()),
        chain_p3_p3_p3: PredicateResult::from(ctx.chain_p3_p3_p3()),
        two_leaves_two_mids: PredicateResult::from(ctx.two_leaves_two_mids()),
        counts,
        switch_stable: None,
        limits: None,
    }
}
