//! Memoryless strategies: extraction from a recorded solve, an SCC-based
//! checker, and a brute-force enumeration oracle.

mod check;
mod enumerate;
mod io;

pub use check::{check_strategy, CheckError, CheckOptions, StrategyViolation, Verdict, DEFAULT_CHECK_BOUND};
pub use enumerate::{enumerate_memoryless_winning, strategy_count, EnumerateError, DEFAULT_ENUMERATION_BOUND};
pub use io::{parse_strategy, parse_winning_set, serialize_strategy, serialize_winning_set, StrategyParseError};

use std::collections::BTreeMap;

use crate::fixpoint::FixpointTrace;
use crate::game::{GameGraph, Player, StateId};
use crate::mt::{prepare, MTSolveResult, SolveError};
use crate::spec::{BoundSpec, MTSpec};

/// A partial successor choice for Player 0 states.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Strategy {
    choice: BTreeMap<StateId, StateId>,
}

impl Strategy {
    pub fn new() -> Self {
        Strategy::default()
    }

    pub fn set(&mut self, state: StateId, successor: StateId) {
        self.choice.insert(state, successor);
    }

    pub fn get(&self, state: StateId) -> Option<StateId> {
        self.choice.get(&state).copied()
    }

    pub fn len(&self) -> usize {
        self.choice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choice.is_empty()
    }

    /// Moves in ascending state order.
    pub fn moves(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.choice.iter().map(|(&s, &t)| (s, t))
    }
}

/// Per mode, the progress edges (rank strictly decreases) and the stay edges
/// (inside the inner fixed point of the source's rank).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeSets {
    pub progress: Vec<Vec<(usize, usize)>>,
    pub stay: Vec<Vec<(usize, usize)>>,
}

fn is_progress_edge(trace: &FixpointTrace, mode: usize, v: usize, w: usize) -> bool {
    match (trace.rank(mode, v), trace.rank(mode, w)) {
        (Some(rv), Some(rw)) => rv >= 1 && rw < rv,
        _ => false,
    }
}

/// Targets `j` with `v ∈ X^ℓ_j ∩ ⟦M_k ∧ T_kj⟧` where `ℓ` is the rank of `v`.
fn stay_targets<'a>(
    bound: &'a BoundSpec,
    trace: &'a FixpointTrace,
    mode: usize,
    v: usize,
) -> impl Iterator<Item = usize> + 'a {
    let xs = trace
        .rank(mode, v)
        .map(|r| trace.x_ranks[mode][r].as_slice())
        .unwrap_or(&[]);
    xs.iter()
        .enumerate()
        .filter(move |(j, x)| x.contains(v) && bound.mode_target(mode, *j).contains(v))
        .map(|(j, _)| j)
}

fn in_stay_region(trace: &FixpointTrace, mode: usize, v: usize, j: usize, w: usize) -> bool {
    let r = trace.rank(mode, v).unwrap();
    trace.x_ranks[mode][r][j].contains(w)
}

/// All edges of the graph classified per mode from a recorded trace.
pub fn edge_sets(g: &GameGraph, bound: &BoundSpec, trace: &FixpointTrace) -> EdgeSets {
    let modes = trace.y_ranks.len();
    let mut out = EdgeSets {
        progress: vec![Vec::new(); modes],
        stay: vec![Vec::new(); modes],
    };
    for k in 0..modes {
        for v in 0..g.num_states() {
            let targets: Vec<usize> = stay_targets(bound, trace, k, v).collect();
            for w in g.successors(v) {
                if is_progress_edge(trace, k, v, w) {
                    out.progress[k].push((v, w));
                }
                if targets.iter().any(|&j| in_stay_region(trace, k, v, j, w)) {
                    out.stay[k].push((v, w));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum ExtractError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("solve result carries no trace; re-run with trace recording enabled")]
    MissingTrace,
    #[error("winning state {0} carries no mode; strategy extraction requires exhaustive modes")]
    NonExhaustive(usize),
    #[error("internal error: no strategy edge available at state {state} (mode {mode})")]
    NoEdge { state: usize, mode: usize },
}

pub fn extract_strategy(g: &GameGraph, spec: &MTSpec, result: &MTSolveResult) -> Result<Strategy, ExtractError> {
    let bound = prepare(g, spec)?;
    extract_strategy_bound(g, &bound, result)
}

/// For every Player 0 state in the winning set with mode `k`, picks a
/// progress edge of mode `k` if one exists. Otherwise it stays inside the
/// region of the smallest target index `j` whose stay condition holds at the
/// state, so that the committed target never increases along a stay run.
/// Ties go to the lower-ranked successor, then to the smaller index.
pub fn extract_strategy_bound(
    g: &GameGraph,
    bound: &BoundSpec,
    result: &MTSolveResult,
) -> Result<Strategy, ExtractError> {
    let trace = result.trace.as_ref().ok_or(ExtractError::MissingTrace)?;
    let winning = &result.winning;
    let mut strategy = Strategy::new();
    for v in winning.iter() {
        let Some(k) = bound.mode_of(v) else {
            return Err(ExtractError::NonExhaustive(v));
        };
        if g.owner(v) != Player::Zero {
            continue;
        }
        let no_edge = ExtractError::NoEdge { state: v, mode: k };
        let best = |edge: &dyn Fn(usize) -> bool| {
            g.successors(v)
                .filter(|&w| winning.contains(w) && edge(w))
                .min_by_key(|&w| (trace.rank(k, w).unwrap_or(usize::MAX), w))
        };
        let choice = match best(&|w| is_progress_edge(trace, k, v, w)) {
            Some(w) => w,
            None => {
                let j = stay_targets(bound, trace, k, v).next().ok_or(no_edge.clone())?;
                best(&|w| in_stay_region(trace, k, v, j, w)).ok_or(no_edge)?
            }
        };
        strategy.set(v.into(), choice.into());
    }
    Ok(strategy)
}
