use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::moves::visit_useful;
use super::{MatchingPair, Move, NeighborhoodLimits, ObjectiveTuple, Scorer, Side};
use crate::graph::{EdgeId, Graph};
use crate::Result;

/// Randomized greedy pair: edges in a seeded shuffle go to `M1` when
/// possible, else to `M2` when possible.
pub fn greedy_init(g: &Graph, seed: u64) -> Result<MatchingPair> {
    g.require_subcubic()?;
    let mut order: Vec<EdgeId> = g.edge_ids().collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut covered = vec![[false; 2]; g.n()];
    let mut labels = vec![None; g.m()];
    for e in order {
        let (u, v) = g.endpoints(e);
        for side in Side::BOTH {
            let i = side.index();
            if !covered[u.0][i] && !covered[v.0][i] {
                covered[u.0][i] = true;
                covered[v.0][i] = true;
                labels[e.0] = Some(side);
                break;
            }
        }
    }
    Ok(MatchingPair::from_labels_unchecked(labels))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    /// Move evaluations allowed per start.
    pub budget: u64,
    /// Extra starts tried when a start runs out of budget before becoming
    /// stable.
    pub restarts: u32,
    pub limits: NeighborhoodLimits,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: 200_000,
            restarts: 20,
            limits: NeighborhoodLimits::FULL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub pair: MatchingPair,
    pub objective: ObjectiveTuple,
    /// No move within the limits improves `objective`.
    pub stable: bool,
    pub evaluations: u64,
    pub restarts_used: u32,
}

enum Scan {
    Improving(Move, ObjectiveTuple),
    Stable,
    Exhausted,
}

/// First move in enumeration order that strictly improves `current`.
fn scan(
    scorer: &Scorer<'_>,
    labels: &[Option<Side>],
    current: ObjectiveTuple,
    limits: NeighborhoodLimits,
    evaluations: &mut u64,
    budget: Option<u64>,
) -> Scan {
    let g = scorer.graph();
    let mut found = None;
    let mut exhausted = false;
    let mut scratch = labels.to_vec();
    let _ = visit_useful(g, labels, limits, |mv| {
        if budget.is_some_and(|b| *evaluations >= b) {
            exhausted = true;
            return ControlFlow::Break(());
        }
        *evaluations += 1;
        if let Some(next) = improvement(scorer, labels, &mut scratch, current, mv) {
            found = Some((mv.clone(), next));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    match found {
        Some((mv, next)) => Scan::Improving(mv, next),
        None if exhausted => Scan::Exhausted,
        None => Scan::Stable,
    }
}

/// The objective after `mv` if that is strictly better than `current`.
fn improvement(
    scorer: &Scorer<'_>,
    labels: &[Option<Side>],
    scratch: &mut [Option<Side>],
    current: ObjectiveTuple,
    mv: &Move,
) -> Option<ObjectiveTuple> {
    let full = |scratch: &mut [Option<Side>]| {
        mv.apply_unchecked(scratch);
        let next = scorer.objective(scratch);
        scratch.copy_from_slice(labels);
        next
    };
    match mv.union_delta() {
        d if d < 0 => return None,
        d if d > 0 => return Some(full(scratch)),
        _ => {}
    }
    let removed: Vec<usize> = mv.removals.iter().map(|(e, _)| e.0).collect();
    let added: Vec<usize> = mv.additions.iter().map(|(e, _)| e.0).collect();
    let leaving: Vec<usize> = added
        .iter()
        .copied()
        .filter(|e| !removed.contains(e))
        .collect();
    let entering: Vec<usize> = removed
        .iter()
        .copied()
        .filter(|e| !added.contains(e))
        .collect();
    if leaving.is_empty() && entering.is_empty() {
        // Same leftover edges and same union: nothing the objective sees changes.
        return None;
    }
    match scorer.h_delta(labels, &leaving, &entering) {
        d if d > 0 => None,
        d if d < 0 => Some(full(scratch)),
        _ => {
            let next = full(scratch);
            (next > current).then_some(next)
        }
    }
}

/// An improving move within `limits`, if the pair is not switch-stable.
pub fn find_improving_move(
    g: &Graph,
    pair: &MatchingPair,
    limits: NeighborhoodLimits,
) -> Option<Move> {
    let scorer = Scorer::new(g);
    let current = scorer.objective(pair.labels());
    let mut evaluations = 0;
    match scan(
        &scorer,
        pair.labels(),
        current,
        limits,
        &mut evaluations,
        None,
    ) {
        Scan::Improving(mv, _) => Some(mv),
        Scan::Stable | Scan::Exhausted => None,
    }
}

struct Descent {
    labels: Vec<Option<Side>>,
    objective: ObjectiveTuple,
    stable: bool,
    evaluations: u64,
}

fn descend(
    scorer: &Scorer<'_>,
    mut labels: Vec<Option<Side>>,
    limits: NeighborhoodLimits,
    budget: u64,
) -> Descent {
    let mut objective = scorer.objective(&labels);
    let mut evaluations = 0;
    loop {
        match scan(
            scorer,
            &labels,
            objective,
            limits,
            &mut evaluations,
            Some(budget),
        ) {
            Scan::Improving(mv, next) => {
                mv.apply_unchecked(&mut labels);
                debug_assert!(MatchingPair::from_labels(scorer.graph(), labels.clone()).is_ok());
                debug_assert!(next > objective);
                objective = next;
            }
            Scan::Stable => {
                return Descent {
                    labels,
                    objective,
                    stable: true,
                    evaluations,
                }
            }
            Scan::Exhausted => {
                return Descent {
                    labels,
                    objective,
                    stable: false,
                    evaluations,
                }
            }
        }
    }
}

/// First-improvement descent from `greedy_init(g, seed)`. If the budget
/// runs out before the pair is stable, the search restarts from
/// `greedy_init(g, seed + i)`; the first stable pair wins, otherwise the best
/// pair seen is returned with `stable == false`.
pub fn local_search(g: &Graph, seed: u64, config: &SearchConfig) -> Result<SearchOutcome> {
    g.require_subcubic()?;
    let scorer = Scorer::new(g);
    let mut best: Option<Descent> = None;
    let mut evaluations = 0;
    let mut restarts_used = 0;
    for i in 0..=config.restarts {
        let start = greedy_init(g, seed.wrapping_add(u64::from(i)))?;
        let run = descend(
            &scorer,
            start.labels().to_vec(),
            config.limits,
            config.budget,
        );
        evaluations += run.evaluations;
        restarts_used = i;
        let stable = run.stable;
        if stable || best.as_ref().is_none_or(|b| run.objective > b.objective) {
            best = Some(run);
        }
        if stable {
            break;
        }
    }
    let best = best.expect("at least one start");
    Ok(SearchOutcome {
        pair: MatchingPair::from_labels_unchecked(best.labels),
        objective: best.objective,
        stable: best.stable,
        evaluations,
        restarts_used,
    })
}
