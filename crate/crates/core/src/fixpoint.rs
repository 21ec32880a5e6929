//! Least and greatest fixed points over state sets, with `Pre` counting and
//! optional warm starts.

use std::borrow::Cow;
use std::time::Duration;

use crate::game::{GameGraph, StateSet};

/// Counters reported by a solve.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixpointStats {
    pub pre_count: u64,
    /// Number of evaluations of the outermost greatest fixed point.
    pub outer_iterations: u32,
    pub wall_time: Duration,
}

/// Iterates recorded for strategy extraction at the converged winning set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixpointTrace {
    /// Per mode, the strictly increasing chain of `μY` iterates. Entry `ℓ` is
    /// the set after `ℓ + 1` applications of the body to `∅`, so a state's
    /// rank is the first index whose set contains it.
    pub y_ranks: Vec<Vec<StateSet>>,
    /// Per mode, rank and target, the inner `νX` fixed point evaluated while
    /// computing `y_ranks[mode][rank]`; their union is that iterate.
    pub x_ranks: Vec<Vec<Vec<StateSet>>>,
}

impl FixpointTrace {
    pub fn rank(&self, mode: usize, state: usize) -> Option<usize> {
        self.y_ranks[mode].iter().position(|set| set.contains(state))
    }
}

/// Result of a recorded reach-or-persist computation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PersistenceRecord {
    pub y_chain: Vec<StateSet>,
    /// `x_ranks[ℓ][j]`: inner fixed point for persistence set `j` at step `ℓ`.
    pub x_ranks: Vec<Vec<StateSet>>,
}

/// Warm-start seeds for the inner `νX` computations: `slots[ℓ][j]` is the
/// fixed point the previous call reached at `Y` step `ℓ` for persistence set
/// `j`. Reusing them is sound as long as the reach set only shrinks between
/// calls, which holds across iterations of the outer `νZ`.
pub type WarmSlots = Vec<Vec<StateSet>>;

/// Single-threaded evaluator that owns the `Pre` counter for one solve.
pub struct Engine<'g> {
    game: &'g GameGraph,
    pre_count: u64,
}

impl<'g> Engine<'g> {
    pub fn new(game: &'g GameGraph) -> Self {
        Engine { game, pre_count: 0 }
    }

    pub fn game(&self) -> &'g GameGraph {
        self.game
    }

    pub fn pre_count(&self) -> u64 {
        self.pre_count
    }

    pub fn pre(&mut self, set: &StateSet) -> StateSet {
        self.pre_count += 1;
        self.game.pre(set)
    }

    /// Least fixed point of `f` above `seed`, which must lie below it.
    pub fn lfp<F>(&mut self, seed: StateSet, f: F) -> StateSet
    where
        F: FnMut(&mut Self, &StateSet) -> StateSet,
    {
        self.iterate(seed, f, |_| {})
    }

    /// Greatest fixed point of `f` below `seed`, which must lie above it.
    pub fn gfp<F>(&mut self, seed: StateSet, f: F) -> StateSet
    where
        F: FnMut(&mut Self, &StateSet) -> StateSet,
    {
        self.iterate(seed, f, |_| {})
    }

    /// Applies `f` until two consecutive iterates are equal, calling
    /// `observe` on every iterate that differs from its predecessor.
    pub fn iterate<F, O>(&mut self, seed: StateSet, mut f: F, mut observe: O) -> StateSet
    where
        F: FnMut(&mut Self, &StateSet) -> StateSet,
        O: FnMut(&StateSet),
    {
        let mut current = seed;
        loop {
            let next = f(self, &current);
            if next == current {
                return current;
            }
            observe(&next);
            current = next;
        }
    }

    /// `νX (Pre(X) ∩ persist)`, seeded from `seed` or from all states.
    pub fn persist(&mut self, persist: &StateSet, seed: Option<StateSet>) -> StateSet {
        let none = StateSet::empty(self.game.num_states());
        self.persist_or(persist, &none, seed)
    }

    /// `νX ((Pre(X) ∩ persist) ∪ base)`, seeded from `seed` or from all states.
    pub fn persist_or(&mut self, persist: &StateSet, base: &StateSet, seed: Option<StateSet>) -> StateSet {
        let seed = seed.unwrap_or_else(|| self.game.all_states());
        self.gfp(seed, |e, x| {
            let mut next = e.pre(x);
            next.intersect_with(persist);
            next.union_with(base);
            next
        })
    }

    /// `μY ⋃_j νX((Pre(X) ∩ persist_j) ∪ reach ∪ Pre(Y))`: the states from
    /// which Player 0 can force reaching `reach` or eventually staying inside
    /// one of the persistence sets forever.
    ///
    /// With `warm`, the inner fixed points are seeded from the slots, which
    /// are then replaced by the values of this call.
    pub fn persistence_reach(
        &mut self,
        persist: &[StateSet],
        reach: &StateSet,
        warm: Option<&mut WarmSlots>,
    ) -> StateSet {
        self.persistence_reach_inner(persist, reach, warm, None)
    }

    /// As [`Engine::persistence_reach`] on the subgame induced by `within`,
    /// also returning the `Y` chain and the inner fixed points of each step.
    /// `within` must be closed for Player 1 and give every Player 0 state a
    /// move inside it, so that `Pre` restricted to it is the subgame's `Pre`.
    pub fn persistence_reach_recorded(
        &mut self,
        persist: &[StateSet],
        reach: &StateSet,
        within: &StateSet,
    ) -> (StateSet, PersistenceRecord) {
        let mut record = PersistenceRecord::default();
        let result = self.persistence_reach_inner(persist, reach, None, Some((within, &mut record)));
        (result, record)
    }

    fn persistence_reach_inner(
        &mut self,
        persist: &[StateSet],
        reach: &StateSet,
        warm: Option<&mut WarmSlots>,
        mut record: Option<(&StateSet, &mut PersistenceRecord)>,
    ) -> StateSet {
        let within = record.as_ref().map(|(w, _)| (*w).clone());
        let persist: Cow<[StateSet]> = match &within {
            Some(w) => persist.iter().map(|p| p.intersection(w)).collect(),
            None => Cow::Borrowed(persist),
        };
        let mut fresh: WarmSlots = Vec::new();
        let mut y = StateSet::empty(self.game.num_states());
        for step in 0.. {
            let mut base = self.pre(&y);
            base.union_with(reach);
            if let Some(w) = &within {
                base.intersect_with(w);
            }
            let mut next = base.clone();
            let mut xs = Vec::with_capacity(persist.len());
            for (j, p) in persist.iter().enumerate() {
                let seed = warm
                    .as_deref()
                    .and_then(|slots| slots.get(step))
                    .and_then(|row| row.get(j))
                    .cloned()
                    .or_else(|| within.clone());
                let x = self.persist_or(p, &base, seed);
                next.union_with(&x);
                xs.push(x);
            }
            if next == y {
                if warm.is_some() {
                    fresh.push(xs);
                }
                break;
            }
            if let Some((_, rec)) = record.as_mut() {
                rec.y_chain.push(next.clone());
                rec.x_ranks.push(xs.clone());
            }
            if warm.is_some() {
                fresh.push(xs);
            }
            y = next;
        }
        if let Some(slots) = warm {
            *slots = fresh;
        }
        y
    }
}

/// One-shot reach-or-persist solve with a fresh counter.
pub fn solve_persistence_reach(
    g: &GameGraph,
    persist: &[StateSet],
    reach: &StateSet,
    record: bool,
) -> (StateSet, Option<PersistenceRecord>, u64) {
    let mut engine = Engine::new(g);
    if record {
        let (set, rec) = engine.persistence_reach_recorded(persist, reach, &g.all_states());
        (set, Some(rec), engine.pre_count())
    } else {
        let set = engine.persistence_reach(persist, reach, None);
        (set, None, engine.pre_count())
    }
}
