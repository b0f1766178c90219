//! The remove / swap / add neighbourhood of a matching pair.
//!
//! A move removes up to two matched edges, optionally exchanges the labels on
//! one component of what remains of `G[M1 ∪ M2]`, and adds up to three
//! leftover edges to chosen sides. Only *connected* moves are enumerated: the
//! parts of a move (each removed edge, the swapped component through its two
//! ends, each added edge) must form a connected structure where two parts
//! touch when they share a vertex. A disconnected move is the composition of
//! its connected pieces, each of which is itself admissible.

use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use super::{walk_components, MatchingPair, Side, UnionComponent};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::{Error, Result};

/// Caps on the three parts of a move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NeighborhoodLimits {
    pub removals: usize,
    pub swaps: usize,
    pub additions: usize,
}

impl NeighborhoodLimits {
    pub const FULL: NeighborhoodLimits = NeighborhoodLimits {
        removals: 2,
        swaps: 1,
        additions: 3,
    };

    pub fn new(removals: usize, swaps: usize, additions: usize) -> Result<NeighborhoodLimits> {
        if removals > 2 || swaps > 1 || additions > 3 {
            return Err(Error::InvalidArgument(format!(
                "neighbourhood ({removals},{swaps},{additions}) exceeds (2,1,3)"
            )));
        }
        Ok(NeighborhoodLimits {
            removals,
            swaps,
            additions,
        })
    }
}

impl Default for NeighborhoodLimits {
    fn default() -> Self {
        NeighborhoodLimits::FULL
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Move {
    /// Matched edges to drop, tagged with the side they leave.
    pub removals: Vec<(EdgeId, Side)>,
    /// Edges of one component of `G[M1 ∪ M2]` minus the removals; every label
    /// on it is flipped.
    pub swap: Option<Arc<[EdgeId]>>,
    pub additions: Vec<(EdgeId, Side)>,
}

impl Move {
    pub fn union_delta(&self) -> isize {
        self.additions.len() as isize - self.removals.len() as isize
    }

    /// Applies the move to a copy of `pair`, checking every precondition.
    pub fn apply(&self, g: &Graph, pair: &MatchingPair) -> Result<MatchingPair> {
        pair.validate(g)?;
        let mut labels = pair.labels().to_vec();
        for &(e, side) in &self.removals {
            g.check_edge(e)?;
            if labels[e.0] != Some(side) {
                return Err(Error::InvalidPair(format!(
                    "cannot remove {e}: not in that matching"
                )));
            }
            labels[e.0] = None;
        }
        if let Some(swap) = &self.swap {
            let mut want: Vec<EdgeId> = swap.to_vec();
            want.sort_unstable();
            let first = *want
                .first()
                .ok_or_else(|| Error::InvalidPair("empty component swap".into()))?;
            g.check_edge(first)?;
            let comps = walk_components(g, |e| labels[e.0].is_some());
            let found = comps
                .iter()
                .find(|c| c.edges.contains(&first))
                .ok_or_else(|| Error::InvalidPair(format!("{first} is not matched")))?;
            let mut have = found.edges.clone();
            have.sort_unstable();
            if have != want {
                return Err(Error::InvalidPair("swap is not a whole component".into()));
            }
            for e in want {
                labels[e.0] = labels[e.0].map(Side::other);
            }
        }
        for &(e, side) in &self.additions {
            g.check_edge(e)?;
            if labels[e.0].is_some() {
                return Err(Error::InvalidPair(format!(
                    "cannot add {e}: already matched"
                )));
            }
            labels[e.0] = Some(side);
        }
        MatchingPair::from_labels(g, labels)
    }

    pub(crate) fn apply_unchecked(&self, labels: &mut [Option<Side>]) {
        for &(e, _) in &self.removals {
            labels[e.0] = None;
        }
        if let Some(swap) = &self.swap {
            for e in swap.iter() {
                labels[e.0] = labels[e.0].map(Side::other);
            }
        }
        for &(e, side) in &self.additions {
            labels[e.0] = Some(side);
        }
    }
}

/// Calls `visit` on every admissible connected move within `limits`, in a
/// fixed order: by removal set (none, singles, pairs), then swap (none
/// first), then additions by size and lexicographically.
pub fn visit_neighborhood<F>(
    g: &Graph,
    pair: &MatchingPair,
    limits: NeighborhoodLimits,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&Move) -> ControlFlow<()>,
{
    Enumerator::new(g, pair.labels(), limits, false).run(&mut visit)
}

pub fn neighborhood(g: &Graph, pair: &MatchingPair, limits: NeighborhoodLimits) -> Vec<Move> {
    let mut out = Vec::new();
    let _ = visit_neighborhood(g, pair, limits, |mv| {
        out.push(mv.clone());
        ControlFlow::Continue(())
    });
    out
}

/// As [`visit_neighborhood`], skipping moves that can never improve the
/// objective: those that shrink the union and those that add nothing.
pub(crate) fn visit_useful<F>(
    g: &Graph,
    labels: &[Option<Side>],
    limits: NeighborhoodLimits,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&Move) -> ControlFlow<()>,
{
    Enumerator::new(g, labels, limits, true).run(&mut visit)
}

type Visitor<'v> = dyn FnMut(&Move) -> ControlFlow<()> + 'v;

struct SwapOption {
    edges: Arc<[EdgeId]>,
    ends: Option<(usize, usize)>,
}

struct Enumerator<'a> {
    g: &'a Graph,
    labels: &'a [Option<Side>],
    limits: NeighborhoodLimits,
    useful_only: bool,
    comps: Vec<UnionComponent>,
    comp_of: Vec<usize>,
    base: Vec<(usize, Side)>,
    in_r: Vec<bool>,
    in_c: Vec<bool>,
    dist: Vec<usize>,
}

impl<'a> Enumerator<'a> {
    fn new(
        g: &'a Graph,
        labels: &'a [Option<Side>],
        limits: NeighborhoodLimits,
        useful_only: bool,
    ) -> Enumerator<'a> {
        let comps = walk_components(g, |e| labels[e.0].is_some());
        let mut comp_of = vec![usize::MAX; g.m()];
        for (k, c) in comps.iter().enumerate() {
            for e in &c.edges {
                comp_of[e.0] = k;
            }
        }
        let mut en = Enumerator {
            g,
            labels,
            limits,
            useful_only,
            comps,
            comp_of,
            base: Vec::new(),
            in_r: vec![false; g.m()],
            in_c: vec![false; g.m()],
            dist: vec![usize::MAX; g.n()],
        };
        for (e, (u, v)) in g.edges() {
            if labels[e.0].is_none() {
                for t in Side::BOTH {
                    if en.free(u.0, t) && en.free(v.0, t) {
                        en.base.push((e.0, t));
                    }
                }
            }
        }
        en
    }

    /// Whether `v` is uncovered by side `t` once the current removals and
    /// swap are applied.
    fn free(&self, v: usize, t: Side) -> bool {
        self.g.incident(VertexId(v)).iter().all(|e| {
            let Some(side) = self.labels[e.0] else {
                return true;
            };
            if self.in_r[e.0] {
                return true;
            }
            let side = if self.in_c[e.0] { side.other() } else { side };
            side != t
        })
    }

    /// Vertices within `radius` of `sources`, sorted.
    fn ball(&mut self, sources: &[usize], radius: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &s in sources {
            if self.dist[s] == usize::MAX {
                self.dist[s] = 0;
                out.push(s);
            }
        }
        let mut i = 0;
        while i < out.len() {
            let u = out[i];
            let d = self.dist[u];
            if d < radius {
                for &w in self.g.neighbors(VertexId(u)) {
                    if self.dist[w.0] == usize::MAX {
                        self.dist[w.0] = d + 1;
                        out.push(w.0);
                    }
                }
            }
            i += 1;
        }
        for &v in &out {
            self.dist[v] = usize::MAX;
        }
        out.sort_unstable();
        out
    }

    fn ends(&self, e: usize) -> [usize; 2] {
        let (u, v) = self.g.endpoints(EdgeId(e));
        [u.0, v.0]
    }

    fn run(&mut self, visit: &mut Visitor<'_>) -> ControlFlow<()> {
        let lim = self.limits;
        self.with_removals(&[], visit)?;
        if lim.removals == 0 || (self.useful_only && lim.additions == 0) {
            return ControlFlow::Continue(());
        }
        let matched: Vec<usize> = (0..self.g.m())
            .filter(|&e| self.labels[e].is_some())
            .collect();
        for &f in &matched {
            self.with_removals(&[f], visit)?;
        }
        if lim.removals < 2 || (self.useful_only && lim.additions < 2) {
            return ControlFlow::Continue(());
        }

        // Two removals must be joinable through additions, possibly via a
        // swapped component whose ends lie near both of them.
        let a = lim.additions;
        let mut balls = vec![Vec::new(); self.g.m()];
        let mut near = vec![Vec::new(); self.g.m()];
        let mut end_comp = vec![usize::MAX; self.g.n()];
        for (k, c) in self.comps.iter().enumerate() {
            if let Some((x, y)) = c.ends() {
                end_comp[x.0] = k;
                end_comp[y.0] = k;
            }
        }
        let mut by_comp = vec![Vec::new(); self.comps.len()];
        for &f in &matched {
            let ends = self.ends(f);
            balls[f] = self.ball(&ends, a);
            if lim.swaps > 0 {
                let mut ks: Vec<usize> = balls[f]
                    .iter()
                    .map(|&v| end_comp[v])
                    .filter(|&k| k != usize::MAX)
                    .collect();
                ks.push(self.comp_of[f]);
                ks.sort_unstable();
                ks.dedup();
                for &k in &ks {
                    by_comp[k].push(f);
                }
                near[f] = ks;
            }
        }
        for &f1 in &matched {
            let mut partners: Vec<usize> = Vec::new();
            for &v in &balls[f1] {
                partners.extend(
                    self.g
                        .incident(VertexId(v))
                        .iter()
                        .map(|e| e.0)
                        .filter(|&e| self.labels[e].is_some()),
                );
            }
            for &k in &near[f1] {
                partners.extend_from_slice(&by_comp[k]);
            }
            partners.retain(|&f2| f2 > f1);
            partners.sort_unstable();
            partners.dedup();
            for f2 in partners {
                self.with_removals(&[f1, f2], visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    fn with_removals(&mut self, r: &[usize], visit: &mut Visitor<'_>) -> ControlFlow<()> {
        for &f in r {
            self.in_r[f] = true;
        }
        let options = self.swap_options(r);
        let mut flow = self.with_swap(r, None, visit);
        if flow.is_continue() {
            for opt in &options {
                flow = self.with_swap(r, Some(opt), visit);
                if flow.is_break() {
                    break;
                }
            }
        }
        for &f in r {
            self.in_r[f] = false;
        }
        flow
    }

    fn swap_options(&mut self, r: &[usize]) -> Vec<SwapOption> {
        if self.limits.swaps == 0 {
            return Vec::new();
        }
        let mut affected: Vec<usize> = r.iter().map(|&f| self.comp_of[f]).collect();
        affected.sort_unstable();
        affected.dedup();
        let mut options = Vec::new();
        for (k, c) in self.comps.iter().enumerate() {
            if affected.binary_search(&k).is_err() {
                options.push(SwapOption {
                    edges: c.edges.clone().into(),
                    ends: c.ends().map(|(x, y)| (x.0, y.0)),
                });
                continue;
            }
            let len = c.edges.len();
            let vertex = |i: usize| c.vertices[if c.cycle { i % len } else { i }].0;
            let start = if c.cycle {
                // Begin right after a removed edge so no run wraps around.
                c.edges
                    .iter()
                    .position(|e| self.in_r[e.0])
                    .map_or(0, |p| p + 1)
            } else {
                0
            };
            let mut run: Vec<EdgeId> = Vec::new();
            let mut run_start = start;
            for i in start..start + len {
                let e = c.edges[i % len];
                if self.in_r[e.0] {
                    if !run.is_empty() {
                        options.push(SwapOption {
                            edges: std::mem::take(&mut run).into(),
                            ends: Some((vertex(run_start), vertex(i))),
                        });
                    }
                    run_start = i + 1;
                } else {
                    run.push(e);
                }
            }
            if !run.is_empty() {
                options.push(SwapOption {
                    edges: run.into(),
                    ends: Some((vertex(run_start), vertex(start + len))),
                });
            }
        }
        if self.useful_only || !r.is_empty() {
            options.retain(|o| o.ends.is_some());
        }
        if !r.is_empty() {
            let anchors: Vec<usize> = r.iter().flat_map(|&f| self.ends(f)).collect();
            let ball = self.ball(&anchors, self.limits.additions);
            options.retain(|o| {
                let (x, y) = o.ends.expect("filtered above");
                ball.binary_search(&x).is_ok() || ball.binary_search(&y).is_ok()
            });
        }
        options.sort_by_key(|o| o.edges.iter().min().copied());
        options
    }

    fn with_swap(
        &mut self,
        r: &[usize],
        swap: Option<&SwapOption>,
        visit: &mut Visitor<'_>,
    ) -> ControlFlow<()> {
        if let Some(opt) = swap {
            for e in opt.edges.iter() {
                self.in_c[e.0] = true;
            }
        }
        let flow = self.with_swap_marked(r, swap, visit);
        if let Some(opt) = swap {
            for e in opt.edges.iter() {
                self.in_c[e.0] = false;
            }
        }
        flow
    }

    fn with_swap_marked(
        &mut self,
        r: &[usize],
        swap: Option<&SwapOption>,
        visit: &mut Visitor<'_>,
    ) -> ControlFlow<()> {
        let a = self.limits.additions;
        let mut anchors: Vec<usize> = r.iter().flat_map(|&f| self.ends(f)).collect();
        if let Some((x, y)) = swap.and_then(|o| o.ends) {
            anchors.extend([x, y]);
        }
        anchors.sort_unstable();
        anchors.dedup();

        let mut cands: Vec<(usize, Side)> = Vec::new();
        if a > 0 {
            for &(e, t) in &self.base {
                let [u, v] = self.ends(e);
                if self.free(u, t) && self.free(v, t) {
                    cands.push((e, t));
                }
            }
            for &z in &anchors {
                for &e in self.g.incident(VertexId(z)) {
                    let e = e.0;
                    let label = self.labels[e];
                    if label.is_some() && !self.in_r[e] {
                        continue;
                    }
                    let [u, v] = self.ends(e);
                    for t in Side::BOTH {
                        if label != Some(t) && self.free(u, t) && self.free(v, t) {
                            cands.push((e, t));
                        }
                    }
                }
            }
            cands.sort_unstable();
            cands.dedup();
            if !anchors.is_empty() {
                let ball = self.ball(&anchors, a - 1);
                cands.retain(|&(e, _)| {
                    let [u, v] = self.ends(e);
                    ball.binary_search(&u).is_ok() || ball.binary_search(&v).is_ok()
                });
            }
        }

        let lo = if self.useful_only { r.len().max(1) } else { 0 };
        let fixed = Fixed {
            g: self.g,
            labels: self.labels,
            removals: r,
            swap,
        };
        if anchors.is_empty() && swap.is_none() {
            // Additions only: anchor each set at its smallest member.
            for i in 0..cands.len() {
                let seed = cands[i];
                let ball = self.ball(&self.ends(seed.0), a.saturating_sub(1));
                let rest: Vec<(usize, Side)> = cands[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&(e, _)| {
                        let [u, v] = self.ends(e);
                        ball.binary_search(&u).is_ok() || ball.binary_search(&v).is_ok()
                    })
                    .collect();
                for size in lo.max(1)..=a {
                    let mut chosen = vec![seed];
                    choose(self.g, &rest, 0, size - 1, &mut chosen, &mut |adds| {
                        fixed.emit(adds, visit)
                    })?;
                }
            }
            return ControlFlow::Continue(());
        }
        for size in lo..=a {
            let mut chosen = Vec::new();
            choose(self.g, &cands, 0, size, &mut chosen, &mut |adds| {
                fixed.emit(adds, visit)
            })?;
        }
        ControlFlow::Continue(())
    }
}

/// Everything of a move except its additions.
struct Fixed<'f> {
    g: &'f Graph,
    labels: &'f [Option<Side>],
    removals: &'f [usize],
    swap: Option<&'f SwapOption>,
}

impl Fixed<'_> {
    fn emit(&self, adds: &[(usize, Side)], visit: &mut Visitor<'_>) -> ControlFlow<()> {
        if self.removals.is_empty() && self.swap.is_none() && adds.is_empty() {
            return ControlFlow::Continue(());
        }
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for &f in self.removals {
            let (u, v) = self.g.endpoints(EdgeId(f));
            parts.push(vec![u.0, v.0]);
        }
        if let Some(opt) = self.swap {
            parts.push(opt.ends.map_or_else(Vec::new, |(x, y)| vec![x, y]));
        }
        for &(e, _) in adds {
            let (u, v) = self.g.endpoints(EdgeId(e));
            parts.push(vec![u.0, v.0]);
        }
        if !connected(&parts) {
            return ControlFlow::Continue(());
        }
        let mv = Move {
            removals: self
                .removals
                .iter()
                .map(|&f| (EdgeId(f), self.labels[f].expect("removals are matched")))
                .collect(),
            swap: self.swap.map(|o| o.edges.clone()),
            additions: adds.iter().map(|&(e, t)| (EdgeId(e), t)).collect(),
        };
        visit(&mv)
    }
}

fn connected(parts: &[Vec<usize>]) -> bool {
    if parts.len() <= 1 {
        return true;
    }
    let mut reached = vec![false; parts.len()];
    reached[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..parts.len() {
            if !reached[j] && parts[i].iter().any(|v| parts[j].contains(v)) {
                reached[j] = true;
                stack.push(j);
            }
        }
    }
    reached.iter().all(|&r| r)
}

/// Lexicographic `k`-subsets of `items[from..]` extending `chosen`, skipping
/// any set that repeats an edge or puts two touching edges on one side.
fn choose(
    g: &Graph,
    items: &[(usize, Side)],
    from: usize,
    k: usize,
    chosen: &mut Vec<(usize, Side)>,
    emit: &mut dyn FnMut(&[(usize, Side)]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if k == 0 {
        return emit(chosen);
    }
    for i in from..items.len() {
        if items.len() - i < k {
            break;
        }
        let cand = items[i];
        if chosen.iter().any(|&c| clash(g, c, cand)) {
            continue;
        }
        chosen.push(cand);
        let flow = choose(g, items, i + 1, k - 1, chosen, emit);
        chosen.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

fn clash(g: &Graph, a: (usize, Side), b: (usize, Side)) -> bool {
    if a.0 == b.0 {
        return true;
    }
    if a.1 != b.1 {
        return false;
    }
    let (x, y) = g.endpoints(EdgeId(a.0));
    let (u, v) = g.endpoints(EdgeId(b.0));
    x == u || x == v || y == u || y == v
}
