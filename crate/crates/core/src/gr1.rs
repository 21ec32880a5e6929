//! Mode-target games solved through their GR(1) embedding.
//!
//! With targets padded to `max_i t_i` columns (missing entries are `∅`), the
//! embedded game has one assumption per column,
//! `□◇ ⋀_i (¬M_i ∨ ¬T̄_ij)`, and one guarantee per mode, `□◇ ¬M_i`.

use crate::game::{GameGraph, StateSet};
use crate::mt::{prepare, solve_nested, MTSolveResult, SolveError, SolveOptions};
use crate::spec::{BoundSpec, MTSpec};

/// A GR(1) winning condition over positional state sets:
/// `⋀ □◇ assumption → ⋀ □◇ guarantee`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GR1Spec {
    assumptions: Vec<StateSet>,
    guarantees: Vec<StateSet>,
}

impl GR1Spec {
    /// Returns `None` without guarantees. An empty assumption list is true.
    pub fn new(assumptions: Vec<StateSet>, guarantees: Vec<StateSet>) -> Option<Self> {
        if guarantees.is_empty() {
            None
        } else {
            Some(GR1Spec {
                assumptions,
                guarantees,
            })
        }
    }

    pub fn assumptions(&self) -> &[StateSet] {
        &self.assumptions
    }

    pub fn guarantees(&self) -> &[StateSet] {
        &self.guarantees
    }
}

/// Solves `νZ ⋂_g μY ⋃_a νX((Pre(X) ∩ ¬a) ∪ (g ∩ Pre(Z)) ∪ Pre(Y))`.
pub fn solve_gr1(g: &GameGraph, spec: &GR1Spec, opts: SolveOptions) -> MTSolveResult {
    let violated: Vec<StateSet> = spec.assumptions.iter().map(StateSet::complement).collect();
    let persist = vec![violated; spec.guarantees.len()];
    solve_nested(g, &persist, &spec.guarantees, opts)
}

/// Counts for the intermediate GR(1) form with one assumption per
/// mode-target pair; built for inspection only, never solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntermediateShape {
    pub assumptions: usize,
    pub guarantees: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGR1 {
    /// `T̄_ij` for `i < m`, `j < max_i t_i`.
    pub padded_targets: Vec<Vec<StateSet>>,
    pub assumptions: Vec<StateSet>,
    pub guarantees: Vec<StateSet>,
    pub intermediate: IntermediateShape,
}

impl EmbeddedGR1 {
    pub fn to_gr1(&self) -> GR1Spec {
        GR1Spec::new(self.assumptions.clone(), self.guarantees.clone())
            .expect("embedding has one guarantee per mode")
    }

    /// `⋃_ℓ ⟦M_ℓ ∧ T̄_ℓj⟧`, the complement of assumption `j`.
    pub fn persistence_set(&self, j: usize) -> StateSet {
        self.assumptions[j].complement()
    }
}

pub fn embed(g: &GameGraph, spec: &MTSpec) -> Result<EmbeddedGR1, SolveError> {
    let bound = prepare(g, spec)?;
    Ok(embed_bound(&bound))
}

pub fn embed_bound(bound: &BoundSpec) -> EmbeddedGR1 {
    let n = bound.universe();
    let m = bound.num_modes();
    let width = bound.targets.iter().map(Vec::len).max().unwrap_or(0);
    let padded_targets: Vec<Vec<StateSet>> = bound
        .targets
        .iter()
        .map(|ts| {
            (0..width)
                .map(|j| ts.get(j).cloned().unwrap_or_else(|| StateSet::empty(n)))
                .collect()
        })
        .collect();
    let assumptions = (0..width)
        .map(|j| {
            let mut violated = StateSet::empty(n);
            for i in 0..m {
                violated.union_with(&bound.modes[i].intersection(&padded_targets[i][j]));
            }
            violated.complement()
        })
        .collect();
    let guarantees = (0..m).map(|i| bound.not_mode(i)).collect();
    EmbeddedGR1 {
        padded_targets,
        assumptions,
        guarantees,
        intermediate: IntermediateShape {
            assumptions: bound.targets.iter().map(Vec::len).sum(),
            guarantees: m,
        },
    }
}

pub fn solve_gr1_emb(g: &GameGraph, spec: &MTSpec, opts: SolveOptions) -> Result<MTSolveResult, SolveError> {
    let bound = prepare(g, spec)?;
    Ok(solve_gr1_emb_bound(g, &bound, opts))
}

pub fn solve_gr1_emb_bound(g: &GameGraph, bound: &BoundSpec, opts: SolveOptions) -> MTSolveResult {
    solve_gr1(g, &embed_bound(bound).to_gr1(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{GameBuilder, Player};
    use crate::mt::tests::{g1, g2_labeled, spec_m1};
    use crate::mt::solve_mt;

    fn line_graph(labels: &[&[&str]]) -> GameGraph {
        let mut b = GameBuilder::new(labels.len());
        for (s, ls) in labels.iter().enumerate() {
            b.set_owner(s, Player::Zero).add_edge(s, s);
            for l in *ls {
                b.add_label(s, l);
            }
        }
        b.build().unwrap()
    }

    #[test]
    fn shape_for_two_modes() {
        let g = line_graph(&[&["M1", "T11"], &["M1", "T12"], &["M2", "T21"]]);
        let spec = MTSpec::from_names([("M1", vec!["T11", "T12"]), ("M2", vec!["T21"])]).unwrap();
        let e = embed(&g, &spec).unwrap();
        assert_eq!(e.assumptions.len(), 2);
        assert_eq!(e.guarantees.len(), 2);
        assert!(e.padded_targets[1][1].is_empty());
        assert_eq!(e.intermediate, IntermediateShape { assumptions: 3, guarantees: 2 });
        assert_eq!(e.persistence_set(0), StateSet::from_indices(3, [0, 2]));
        assert_eq!(e.persistence_set(1), StateSet::from_indices(3, [1]));
    }

    #[test]
    fn smallest_instance() {
        let g = g1();
        let e = embed(&g, &spec_m1()).unwrap();
        // ¬M1 ∨ ¬T11 holds only at s0
        assert_eq!(e.assumptions, vec![StateSet::from_indices(2, [0])]);
        assert_eq!(e.guarantees, vec![StateSet::empty(2)]);
    }

    #[test]
    fn three_single_target_modes() {
        let g = line_graph(&[&["A", "a"], &["B", "b"], &["C", "c"]]);
        let spec = MTSpec::from_names([("A", vec!["a"]), ("B", vec!["b"]), ("C", vec!["c"])]).unwrap();
        let e = embed(&g, &spec).unwrap();
        assert_eq!((e.assumptions.len(), e.guarantees.len()), (1, 3));
    }

    #[test]
    fn agrees_with_direct_solver_on_examples() {
        for g in [g1(), g2_labeled()] {
            let a = solve_mt(&g, &spec_m1(), SolveOptions::default()).unwrap();
            let b = solve_gr1_emb(&g, &spec_m1(), SolveOptions::default()).unwrap();
            assert_eq!(a.winning, b.winning);
        }
    }

    #[test]
    fn generalized_buchi_without_assumptions() {
        // P0 chooses between a loop on s0 and a 2-cycle s1 <-> s2
        let mut b = GameBuilder::new(3);
        for s in 0..3 {
            b.set_owner(s, Player::Zero);
        }
        b.add_edge(0, 0).add_edge(0, 1).add_edge(1, 2).add_edge(2, 1);
        let g = b.build().unwrap();
        let s = |xs: &[usize]| StateSet::from_indices(3, xs.iter().copied());
        // visit s1 and s2 infinitely often: everything wins
        let spec = GR1Spec::new(vec![], vec![s(&[1]), s(&[2])]).unwrap();
        assert_eq!(solve_gr1(&g, &spec, SolveOptions::default()).winning, s(&[0, 1, 2]));
        // visit s0 infinitely often: only s0 (by looping)
        let spec = GR1Spec::new(vec![], vec![s(&[0])]).unwrap();
        assert_eq!(solve_gr1(&g, &spec, SolveOptions::default()).winning, s(&[0]));
        // assuming s0 is visited infinitely often, the 2-cycle wins vacuously
        let spec = GR1Spec::new(vec![s(&[0])], vec![s(&[0])]).unwrap();
        assert_eq!(solve_gr1(&g, &spec, SolveOptions::default()).winning, s(&[0, 1, 2]));
        assert!(GR1Spec::new(vec![], vec![]).is_none());
    }
}
