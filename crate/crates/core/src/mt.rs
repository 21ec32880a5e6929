//! Direct solver for mode-target games:
//!
//! ```text
//! νZ ⋂_i μY ⋃_j νX( (Pre(X) ∩ ⟦M_i ∧ T_ij⟧) ∪ (⟦¬M_i⟧ ∩ Pre(Z)) ∪ Pre(Y) )
//! ```

use std::time::Instant;

use crate::fixpoint::{Engine, FixpointStats, FixpointTrace, WarmSlots};
use crate::game::{GameGraph, StateSet};
use crate::spec::{validate_mode_exclusivity, BindError, BoundSpec, MTSpec, ModeReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Seed each inner `νX` with its value from the previous outer iteration.
    pub warm: bool,
    /// Run the extra pass at the winning set that fills the trace.
    pub record_trace: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            warm: false,
            record_trace: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MTSolveResult {
    pub winning: StateSet,
    pub stats: FixpointStats,
    pub trace: Option<FixpointTrace>,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Bind(#[from] BindError),
    #[error("modes are not mutually exclusive: {}", .0.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Exclusivity(ModeReport),
}

/// Validates exclusivity and binds the spec.
pub(crate) fn prepare(g: &GameGraph, spec: &MTSpec) -> Result<BoundSpec, SolveError> {
    let report = validate_mode_exclusivity(g, spec)?;
    if !report.is_ok() {
        return Err(SolveError::Exclusivity(report));
    }
    Ok(BoundSpec::bind(g, spec)?)
}

pub fn solve_mt(g: &GameGraph, spec: &MTSpec, opts: SolveOptions) -> Result<MTSolveResult, SolveError> {
    let bound = prepare(g, spec)?;
    Ok(solve_mt_bound(g, &bound, opts))
}

/// `⟦M_i ∧ T_ij⟧` for every mode and target.
pub fn mt_persistence_sets(bound: &BoundSpec) -> Vec<Vec<StateSet>> {
    (0..bound.num_modes())
        .map(|i| {
            (0..bound.targets[i].len())
                .map(|j| bound.mode_target(i, j))
                .collect()
        })
        .collect()
}

pub fn solve_mt_bound(g: &GameGraph, bound: &BoundSpec, opts: SolveOptions) -> MTSolveResult {
    let persist = mt_persistence_sets(bound);
    let goals: Vec<StateSet> = (0..bound.num_modes()).map(|i| bound.not_mode(i)).collect();
    solve_nested(g, &persist, &goals, opts)
}

/// `νZ ⋂_i μY ⋃_j νX((Pre(X) ∩ persist[i][j]) ∪ (goals[i] ∩ Pre(Z)) ∪ Pre(Y))`.
///
/// Both the direct and the embedded algorithm are instances of this shape;
/// they differ only in the persistence sets.
pub(crate) fn solve_nested(
    g: &GameGraph,
    persist: &[Vec<StateSet>],
    goals: &[StateSet],
    opts: SolveOptions,
) -> MTSolveResult {
    debug_assert_eq!(persist.len(), goals.len());
    let start = Instant::now();
    let mut engine = Engine::new(g);
    let mut warm: Vec<WarmSlots> = vec![WarmSlots::new(); goals.len()];
    let mut outer_iterations = 0u32;

    let mut z = g.all_states();
    loop {
        outer_iterations += 1;
        let pre_z = engine.pre(&z);
        let mut next = g.all_states();
        for (i, goal) in goals.iter().enumerate() {
            let reach = goal.intersection(&pre_z);
            let slots = opts.warm.then(|| &mut warm[i]);
            let y = engine.persistence_reach(&persist[i], &reach, slots);
            next.intersect_with(&y);
        }
        if next == z {
            break;
        }
        z = next;
    }

    let trace = opts.record_trace.then(|| {
        let mut trace = FixpointTrace::default();
        for (i, goal) in goals.iter().enumerate() {
            let reach = goal.intersection(&z);
            let (_, rec) = engine.persistence_reach_recorded(&persist[i], &reach, &z);
            trace.y_ranks.push(rec.y_chain);
            trace.x_ranks.push(rec.x_ranks);
        }
        trace
    });

    MTSolveResult {
        winning: z,
        stats: FixpointStats {
            pre_count: engine.pre_count(),
            outer_iterations,
            wall_time: start.elapsed(),
        },
        trace,
    }
}

/// One application of the outer operator to `z`; the winning set is a
/// fixed point of this map.
pub fn mt_operator(g: &GameGraph, bound: &BoundSpec, z: &StateSet) -> StateSet {
    let mut engine = Engine::new(g);
    let pre_z = engine.pre(z);
    let mut out = g.all_states();
    for i in 0..bound.num_modes() {
        let persist: Vec<StateSet> = (0..bound.targets[i].len())
            .map(|j| bound.mode_target(i, j))
            .collect();
        let reach = bound.not_mode(i).intersection(&pre_z);
        out.intersect_with(&engine.persistence_reach(&persist, &reach, None));
    }
    out
}

/// Plain triple loop over `GameGraph::pre` with no engine, warm start or
/// recording; used as a differential oracle.
pub fn solve_mt_reference(g: &GameGraph, spec: &MTSpec) -> Result<StateSet, SolveError> {
    let bound = prepare(g, spec)?;
    let n = g.num_states();
    let mut z = StateSet::full(n);
    loop {
        let pre_z = g.pre(&z);
        let mut z_next = StateSet::full(n);
        for i in 0..bound.num_modes() {
            let mode = &bound.modes[i];
            let reach = mode.complement().intersection(&pre_z);
            let mut y = StateSet::empty(n);
            loop {
                let base = reach.union(&g.pre(&y));
                let mut y_next = base.clone();
                for target in &bound.targets[i] {
                    let stay = mode.intersection(target);
                    let mut x = StateSet::full(n);
                    loop {
                        let x_next = g.pre(&x).intersection(&stay).union(&base);
                        if x_next == x {
                            break;
                        }
                        x = x_next;
                    }
                    y_next.union_with(&x);
                }
                if y_next == y {
                    break;
                }
                y = y_next;
            }
            z_next.intersect_with(&y);
        }
        if z_next == z {
            return Ok(z);
        }
        z = z_next;
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::game::{GameBuilder, Player};

    /// s0: P0 -> {s0, s1}; s1: P0 -> {s1}; both M1, s1 also T11.
    pub(crate) fn g1() -> GameGraph {
        let mut b = GameBuilder::new(2);
        b.set_owner(0, Player::Zero).set_owner(1, Player::Zero);
        b.add_edge(0, 0).add_edge(0, 1).add_edge(1, 1);
        b.add_label(0, "M1").add_label(1, "M1").add_label(1, "T11");
        b.build().unwrap()
    }

    /// s0: P0 -> {s1}; s1: P1 -> {s0, s1}; both M1, s1 also T11.
    pub(crate) fn g2_labeled() -> GameGraph {
        let mut b = GameBuilder::new(2);
        b.set_owner(0, Player::Zero).set_owner(1, Player::One);
        b.add_edge(0, 1).add_edge(1, 0).add_edge(1, 1);
        b.add_label(0, "M1").add_label(1, "M1").add_label(1, "T11");
        b.build().unwrap()
    }

    pub(crate) fn spec_m1() -> MTSpec {
        MTSpec::from_names([("M1", vec!["T11"])]).unwrap()
    }

    #[test]
    fn g1_all_winning() {
        let r = solve_mt(&g1(), &spec_m1(), SolveOptions::default()).unwrap();
        assert_eq!(r.winning, StateSet::full(2));
        assert_eq!(solve_mt_reference(&g1(), &spec_m1()).unwrap(), r.winning);
        let trace = r.trace.unwrap();
        assert_eq!(trace.rank(0, 1), Some(0));
        assert_eq!(trace.rank(0, 0), Some(1));
        assert!(r.stats.pre_count > 0);
    }

    #[test]
    fn g2_nothing_winning() {
        let r = solve_mt(&g2_labeled(), &spec_m1(), SolveOptions::default()).unwrap();
        assert!(r.winning.is_empty());
        assert!(solve_mt_reference(&g2_labeled(), &spec_m1()).unwrap().is_empty());
    }

    #[test]
    fn universal_target() {
        let mut b = GameBuilder::new(3);
        for s in 0..3 {
            b.set_owner(s, if s == 1 { Player::One } else { Player::Zero });
            b.add_edge(s, (s + 1) % 3).add_label(s, "M1").add_label(s, "T11");
        }
        b.add_edge(1, 1);
        let g = b.build().unwrap();
        let r = solve_mt(&g, &spec_m1(), SolveOptions::default()).unwrap();
        assert_eq!(r.winning, StateSet::full(3));
    }

    #[test]
    fn exclusivity_is_enforced() {
        let mut b = GameBuilder::new(1);
        b.set_owner(0, Player::Zero).add_edge(0, 0);
        b.add_label(0, "M1").add_label(0, "M2").add_label(0, "T");
        let g = b.build().unwrap();
        let spec = MTSpec::from_names([("M1", vec!["T"]), ("M2", vec!["T"])]).unwrap();
        assert!(matches!(
            solve_mt(&g, &spec, SolveOptions::default()),
            Err(SolveError::Exclusivity(_))
        ));
    }

    #[test]
    fn unbound_proposition() {
        let spec = MTSpec::from_names([("M1", vec!["T99"])]).unwrap();
        assert!(matches!(
            solve_mt(&g1(), &spec, SolveOptions::default()),
            Err(SolveError::Bind(_))
        ));
    }

    #[test]
    fn unmoded_states_are_unconstrained() {
        // s0 has no mode and loops; s1 is M1 without its target and loops
        let mut b = GameBuilder::new(3);
        for s in 0..3 {
            b.set_owner(s, Player::Zero).add_edge(s, s);
        }
        b.add_label(1, "M1").add_label(2, "M1").add_label(2, "T11");
        let g = b.build().unwrap();
        let r = solve_mt(&g, &spec_m1(), SolveOptions::default()).unwrap();
        assert_eq!(r.winning, StateSet::from_indices(3, [0, 2]));
    }
}
