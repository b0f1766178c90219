//! The constructive route to a `(1^2,2^4)` colouring: a stable matching
//! pair, its conflict graph, and a 4-colouring of that graph.

use serde::Serialize;

use super::{
    solve_exact, verify, EdgeColoring, PackingSequence, SolveOutcome, DEFAULT_NODE_BUDGET,
};
use crate::conflict::{build_conflict_graph, color_with_budget, ColoringOutcome, VertexColoring};
use crate::graph::Graph;
use crate::matching::{local_search, MatchingPair, SearchConfig};
use crate::{Error, Result};

/// Seed offset between successive pipeline attempts.
const SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineConfig {
    pub search: SearchConfig,
    /// Extra attempts with fresh seeds when H is not 4-colourable.
    pub retries: u32,
    /// Node cap for each attempt at 4-colouring H.
    pub color_budget: u64,
    /// Node cap for the exact fallback.
    pub fallback_budget: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            search: SearchConfig::default(),
            retries: 4,
            color_budget: 2_000_000,
            fallback_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PipelineOutcome {
    Sat {
        coloring: EdgeColoring,
        pair: MatchingPair,
        attempts: u32,
    },
    /// Every attempt failed; the exact solver found a colouring instead.
    Fallback { coloring: EdgeColoring, nodes: u64 },
    /// The exact solver proved there is no colouring or ran out of budget.
    Fail { nodes: u64 },
}

impl PipelineOutcome {
    pub fn coloring(&self) -> Option<&EdgeColoring> {
        match self {
            PipelineOutcome::Sat { coloring, .. } | PipelineOutcome::Fallback { coloring, .. } => {
                Some(coloring)
            }
            PipelineOutcome::Fail { .. } => None,
        }
    }
}

/// Colours `g` with `M1` as class 0, `M2` as class 1 and H colour `c` as
/// class `2 + c`.
pub fn assemble(g: &Graph, pair: &MatchingPair, hc: &VertexColoring) -> Result<EdgeColoring> {
    pair.validate(g)?;
    let h = build_conflict_graph(g, pair);
    if hc.k > 4 || !hc.is_proper(&h) {
        return Err(Error::Coloring(
            "not a proper 4-colouring of the conflict graph".into(),
        ));
    }
    let mut class_of = vec![0; g.m()];
    for e in g.edge_ids() {
        class_of[e.0] = match pair.label(e) {
            Some(side) => side.index(),
            None => 2 + hc.colors[h.index_of(e).expect("leftover edges are H vertices")],
        };
    }
    Ok(EdgeColoring::from_assignment(class_of))
}

/// Runs the constructive pipeline on a connected subcubic graph, retrying
/// with derived seeds and finally falling back to [`solve_exact`].
pub fn solve_pipeline(g: &Graph, seed: u64, config: &PipelineConfig) -> Result<PipelineOutcome> {
    g.require_subcubic()?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let sequence = PackingSequence::ones_twos(2, 4)?;
    for attempt in 0..=config.retries {
        let attempt_seed = seed.wrapping_add(u64::from(attempt).wrapping_mul(SEED_STRIDE));
        let found = local_search(g, attempt_seed, &config.search)?;
        let h = build_conflict_graph(g, &found.pair);
        let Some(ColoringOutcome::Sat { coloring: hc, .. }) =
            color_with_budget(&h, 4, config.color_budget)?
        else {
            continue;
        };
        let coloring = assemble(g, &found.pair, &hc)?;
        if verify(g, &sequence, &coloring)?.is_empty() {
            return Ok(PipelineOutcome::Sat {
                coloring,
                pair: found.pair,
                attempts: attempt + 1,
            });
        }
    }
    Ok(match solve_exact(g, &sequence, config.fallback_budget) {
        SolveOutcome::Sat { coloring, nodes } => PipelineOutcome::Fallback { coloring, nodes },
        SolveOutcome::Unsat { nodes } | SolveOutcome::Unknown { nodes } => {
            PipelineOutcome::Fail { nodes }
        }
    })
}
