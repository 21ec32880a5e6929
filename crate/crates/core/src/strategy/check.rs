//! Strategy checking by strongly connected components of the graph restricted
//! to the strategy's choices.
//!
//! On a finite graph, the set of states a play visits infinitely often is
//! strongly connected. A play persists in mode `i` without persisting in any
//! of its targets exactly when that set lies inside `⟦M_i⟧` but in no
//! `⟦T_ij⟧`, and such a set exists iff some SCC of the subgraph induced on
//! `⟦M_i⟧` is nontrivial and not covered by a single target. So it suffices
//! to inspect maximal SCCs instead of enumerating cycles.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::Strategy;
use crate::game::{GameGraph, Player, StateSet};
use crate::spec::{lasso_satisfies, BindError, BoundSpec, LassoWord, Letter, MTSpec};

pub const DEFAULT_CHECK_BOUND: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Largest graph the checker accepts.
    pub max_states: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_states: DEFAULT_CHECK_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyViolation {
    /// A Player 0 state in the region has no choice.
    MissingChoice { state: usize },
    /// The choice is not an edge of the graph.
    IllegalMove { state: usize, successor: usize },
    /// A move from the region leads outside it.
    Escape { from: usize, to: usize },
    /// A play can stay in `mode` forever while leaving every target of it
    /// infinitely often. `cycle` is a closed walk; the play starts at its
    /// first state.
    BadCycle {
        mode: String,
        cycle: Vec<usize>,
        word: LassoWord,
    },
}

impl fmt::Display for StrategyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyViolation::MissingChoice { state } => {
                write!(f, "player 0 state {state} has no choice")
            }
            StrategyViolation::IllegalMove { state, successor } => {
                write!(f, "choice {state} -> {successor} is not an edge")
            }
            StrategyViolation::Escape { from, to } => {
                write!(f, "move {from} -> {to} leaves the winning set")
            }
            StrategyViolation::BadCycle { mode, cycle, word } => {
                let states: Vec<String> = cycle.iter().map(|s| s.to_string()).collect();
                let letters: Vec<String> = word
                    .cycle()
                    .iter()
                    .map(|l| format!("{{{}}}", l.iter().cloned().collect::<Vec<_>>().join(",")))
                    .collect();
                write!(
                    f,
                    "lasso cycle [{}] stays in {mode} and misses every target; labels ({})^ω",
                    states.join(" "),
                    letters.join(" ")
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(StrategyViolation),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum CheckError {
    #[error("graph has {states} states; the checker accepts at most {limit}")]
    TooLarge { states: usize, limit: usize },
    #[error(transparent)]
    Bind(#[from] BindError),
}

/// Checks that every play from `winning` that follows `f` stays in
/// `winning` and satisfies the spec.
pub fn check_strategy(
    g: &GameGraph,
    spec: &MTSpec,
    f: &Strategy,
    winning: &StateSet,
    opts: CheckOptions,
) -> Result<Verdict, CheckError> {
    if g.num_states() > opts.max_states {
        return Err(CheckError::TooLarge {
            states: g.num_states(),
            limit: opts.max_states,
        });
    }
    let bound = BoundSpec::bind(g, spec)?;
    let mut succ = vec![Vec::new(); g.num_states()];
    for v in winning.iter() {
        match g.owner(v) {
            Player::Zero => {
                let Some(w) = f.get(v.into()).map(|w| w.index()) else {
                    return Ok(Verdict::Fail(StrategyViolation::MissingChoice { state: v }));
                };
                if w >= g.num_states() || !g.has_edge(v, w) {
                    return Ok(Verdict::Fail(StrategyViolation::IllegalMove {
                        state: v,
                        successor: w,
                    }));
                }
                succ[v].push(w);
            }
            Player::One => succ[v].extend(g.successors(v)),
        }
        if let Some(&w) = succ[v].iter().find(|&&w| !winning.contains(w)) {
            return Ok(Verdict::Fail(StrategyViolation::Escape { from: v, to: w }));
        }
    }

    if let Some((mode, scc)) = bad_components(&bound, &succ, winning).into_iter().next() {
        let cycle = closed_walk(&succ, &scc);
        let letters: Vec<Letter> = cycle
            .iter()
            .map(|&s| g.label_names(s).map(str::to_string).collect())
            .collect();
        let word = LassoWord::new(Vec::new(), letters).expect("closed walk is nonempty");
        assert!(
            !lasso_satisfies(spec, &word),
            "checker and lasso semantics disagree on cycle {cycle:?}"
        );
        return Ok(Verdict::Fail(StrategyViolation::BadCycle {
            mode: spec.modes()[mode].name.clone(),
            cycle,
            word,
        }));
    }
    Ok(Verdict::Pass)
}

/// Nontrivial SCCs of `succ` inside `region ∩ ⟦M_i⟧` that no single target
/// of mode `i` covers, in mode order.
pub(super) fn bad_components(bound: &BoundSpec, succ: &[Vec<usize>], region: &StateSet) -> Vec<(usize, StateSet)> {
    let n = bound.universe();
    let mut bad = Vec::new();
    for i in 0..bound.num_modes() {
        let nodes = region.intersection(&bound.modes[i]);
        if nodes.is_empty() {
            continue;
        }
        let mut graph = DiGraph::<usize, ()>::new();
        let mut index: BTreeMap<usize, NodeIndex> = BTreeMap::new();
        for s in nodes.iter() {
            index.insert(s, graph.add_node(s));
        }
        for s in nodes.iter() {
            for &w in &succ[s] {
                if let Some(&t) = index.get(&w) {
                    graph.add_edge(index[&s], t, ());
                }
            }
        }
        let mut components: Vec<StateSet> = tarjan_scc(&graph)
            .into_iter()
            .filter(|c| c.len() > 1 || succ[graph[c[0]]].contains(&graph[c[0]]))
            .map(|c| StateSet::from_indices(n, c.into_iter().map(|x| graph[x])))
            .filter(|c| !bound.targets[i].iter().any(|t| c.is_subset(t)))
            .collect();
        components.sort_by_key(|c| c.first());
        bad.extend(components.into_iter().map(|c| (i, c)));
    }
    bad
}

/// A closed walk through every state of a strongly connected `scc`, starting
/// at its smallest state. The walk's last state has an edge back to the first.
fn closed_walk(succ: &[Vec<usize>], scc: &StateSet) -> Vec<usize> {
    let start = scc.first().expect("component is nonempty");
    let mut walk = vec![start];
    let mut seen = StateSet::from_indices(scc.universe(), [start]);
    let mut cur = start;
    for s in scc.iter() {
        if seen.contains(s) {
            continue;
        }
        for step in path_within(succ, scc, cur, s) {
            seen.insert(step);
            walk.push(step);
        }
        cur = s;
    }
    let back = path_within(succ, scc, cur, start);
    walk.extend(&back[..back.len() - 1]);
    walk
}

/// Shortest path of at least one step from `from` to `to` inside `scc`,
/// excluding `from` and ending at `to`.
fn path_within(succ: &[Vec<usize>], scc: &StateSet, from: usize, to: usize) -> Vec<usize> {
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &w in &succ[from] {
        if scc.contains(w) && !parent.contains_key(&w) {
            parent.insert(w, from);
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &w in &succ[u] {
            if scc.contains(w) && !parent.contains_key(&w) {
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    loop {
        path.push(cur);
        let p = parent[&cur];
        if p == from {
            break;
        }
        cur = p;
    }
    path.reverse();
    path
}
