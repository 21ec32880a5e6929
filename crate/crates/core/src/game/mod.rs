//! Finite turn-based game graphs and the controllable-predecessor operator.

pub(crate) mod io;
mod set;

pub use io::{load_game, serialize_game, GameParseError};
pub use set::{Iter as StateSetIter, StateSet};

use std::collections::BTreeSet;
use std::fmt;

/// Index of a state in a [`GameGraph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

impl StateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for StateId {
    fn from(i: usize) -> Self {
        StateId(u32::try_from(i).expect("state index exceeds u32"))
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    /// The controller.
    Zero,
    /// The environment.
    One,
}

impl Player {
    pub fn tag(self) -> u8 {
        match self {
            Player::Zero => 0,
            Player::One => 1,
        }
    }
}

/// Index into a graph's proposition table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropId(pub u32);

/// A well-formed game graph: owners partition the states, every state has at
/// least one successor, and successor lists are sorted and duplicate-free.
///
/// The proposition table is sorted by name and only holds propositions that
/// label at least one state, so two graphs with the same labeling compare
/// equal regardless of how they were built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameGraph {
    owners: Vec<Player>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    labels: Vec<Vec<PropId>>,
    props: Vec<String>,
}

impl GameGraph {
    pub fn num_states(&self) -> usize {
        self.owners.len()
    }

    pub fn num_edges(&self) -> usize {
        self.targets.len()
    }

    pub fn owner(&self, s: usize) -> Player {
        self.owners[s]
    }

    pub fn successors(&self, s: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.targets[self.offsets[s]..self.offsets[s + 1]]
            .iter()
            .map(|&t| t as usize)
    }

    pub fn out_degree(&self, s: usize) -> usize {
        self.offsets[s + 1] - self.offsets[s]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let Ok(v) = u32::try_from(v) else {
            return false;
        };
        self.targets[self.offsets[u]..self.offsets[u + 1]]
            .binary_search(&v)
            .is_ok()
    }

    pub fn labels(&self, s: usize) -> &[PropId] {
        &self.labels[s]
    }

    pub fn label_names(&self, s: usize) -> impl Iterator<Item = &str> + '_ {
        self.labels[s].iter().map(|p| self.props[p.0 as usize].as_str())
    }

    pub fn propositions(&self) -> &[String] {
        &self.props
    }

    pub fn prop_id(&self, name: &str) -> Option<PropId> {
        self.props
            .binary_search_by(|p| p.as_str().cmp(name))
            .ok()
            .map(|i| PropId(i as u32))
    }

    pub fn prop_name(&self, p: PropId) -> &str {
        &self.props[p.0 as usize]
    }

    /// States carrying proposition `p`.
    pub fn prop_set(&self, p: PropId) -> StateSet {
        StateSet::from_fn(self.num_states(), |s| self.labels[s].binary_search(&p).is_ok())
    }

    pub fn player_states(&self, player: Player) -> StateSet {
        StateSet::from_fn(self.num_states(), |s| self.owners[s] == player)
    }

    pub fn all_states(&self) -> StateSet {
        StateSet::full(self.num_states())
    }

    /// Controllable predecessor: Player 0 states with some successor in `set`
    /// together with Player 1 states whose successors all lie in `set`.
    pub fn pre(&self, set: &StateSet) -> StateSet {
        let n = self.num_states();
        assert_eq!(set.universe(), n, "state set universe does not match graph");
        let mut words = vec![0u64; n.div_ceil(64)];
        for (s, owner) in self.owners.iter().enumerate() {
            let succ = &self.targets[self.offsets[s]..self.offsets[s + 1]];
            let hit = match owner {
                Player::Zero => succ.iter().any(|&t| set.contains(t as usize)),
                Player::One => succ.iter().all(|&t| set.contains(t as usize)),
            };
            if hit {
                words[s / 64] |= 1 << (s % 64);
            }
        }
        StateSet::from_words(n, words)
    }

    /// Converts back into an editable builder.
    pub fn to_builder(&self) -> GameBuilder {
        let mut b = GameBuilder::new(self.num_states());
        for s in 0..self.num_states() {
            b.set_owner(s, self.owners[s]);
            for t in self.successors(s) {
                b.add_edge(s, t);
            }
            for name in self.label_names(s) {
                b.add_label(s, name);
            }
        }
        b
    }
}

/// A well-formedness problem found in a [`GameBuilder`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MissingOwner { state: usize },
    NoSuccessor { state: usize },
    TargetOutOfRange { state: usize, target: usize },
    DuplicateEdge { state: usize, target: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingOwner { state } => write!(f, "state {state}: no owner"),
            Violation::NoSuccessor { state } => write!(f, "state {state}: no successor"),
            Violation::TargetOutOfRange { state, .. } => {
                write!(f, "state {state}: edge target out of range")
            }
            Violation::DuplicateEdge { state, target } => {
                write!(f, "state {state}: duplicate edge to {target}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(|v| v.to_string()).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.messages().join("; "))
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid game graph: {0}")]
pub struct InvalidGraph(pub ValidationReport);

/// Unvalidated game under construction. Edges are kept exactly as added so
/// that [`validate_graph`] can report duplicates and dangling targets.
#[derive(Clone, Debug)]
pub struct GameBuilder {
    owners: Vec<Option<Player>>,
    edges: Vec<Vec<usize>>,
    labels: Vec<BTreeSet<String>>,
}

impl GameBuilder {
    pub fn new(n: usize) -> Self {
        GameBuilder {
            owners: vec![None; n],
            edges: vec![Vec::new(); n],
            labels: vec![BTreeSet::new(); n],
        }
    }

    pub fn num_states(&self) -> usize {
        self.owners.len()
    }

    pub fn set_owner(&mut self, s: usize, player: Player) -> &mut Self {
        self.owners[s] = Some(player);
        self
    }

    pub fn owner(&self, s: usize) -> Option<Player> {
        self.owners[s]
    }

    /// Records an edge; the target is not range-checked here.
    pub fn add_edge(&mut self, u: usize, v: usize) -> &mut Self {
        self.edges[u].push(v);
        self
    }

    pub fn successors(&self, s: usize) -> &[usize] {
        &self.edges[s]
    }

    pub fn add_label(&mut self, s: usize, prop: &str) -> &mut Self {
        self.labels[s].insert(prop.to_string());
        self
    }

    pub fn build(self) -> Result<GameGraph, InvalidGraph> {
        let report = validate_graph(&self);
        if !report.is_ok() {
            return Err(InvalidGraph(report));
        }
        let n = self.num_states();
        let props: Vec<String> = self
            .labels
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let labels = self
            .labels
            .iter()
            .map(|names| {
                names
                    .iter()
                    .map(|name| PropId(props.binary_search(name).unwrap() as u32))
                    .collect()
            })
            .collect();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for mut succ in self.edges {
            succ.sort_unstable();
            targets.extend(succ.into_iter().map(|t| t as u32));
            offsets.push(targets.len());
        }
        Ok(GameGraph {
            owners: self.owners.into_iter().map(Option::unwrap).collect(),
            offsets,
            targets,
            labels,
            props,
        })
    }
}

/// Lists every well-formedness violation of a graph under construction.
pub fn validate_graph(g: &GameBuilder) -> ValidationReport {
    let n = g.num_states();
    let mut violations = Vec::new();
    for s in 0..n {
        if g.owners[s].is_none() {
            violations.push(Violation::MissingOwner { state: s });
        }
        let succ = &g.edges[s];
        if succ.is_empty() {
            violations.push(Violation::NoSuccessor { state: s });
        }
        let mut seen = BTreeSet::new();
        for &t in succ {
            if t >= n {
                violations.push(Violation::TargetOutOfRange { state: s, target: t });
            } else if !seen.insert(t) {
                violations.push(Violation::DuplicateEdge { state: s, target: t });
            }
        }
    }
    ValidationReport { violations }
}
