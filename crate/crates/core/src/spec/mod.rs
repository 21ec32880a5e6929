//! Mode-target specifications: parsing, binding to a game graph, and
//! lasso-word semantics.

mod file;
mod lasso;
mod ltl;

pub use file::{parse_spec_file, serialize_spec, SpecFileError};
pub use lasso::{lasso_satisfies, LassoWord, Letter};
pub use ltl::{parse_mt_formula, to_ltl, LtlError};

use std::collections::BTreeSet;
use std::fmt;

use crate::game::{GameGraph, StateSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeSpec {
    pub name: String,
    pub targets: Vec<String>,
}

/// `⋀_i (FG M_i -> ⋁_j FG T_ij)` as a list of modes with their targets, in
/// declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MTSpec {
    modes: Vec<ModeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("no modes declared")]
    NoModes,
    #[error("mode `{0}` has no targets")]
    NoTargets(String),
    #[error("mode `{0}` declared twice")]
    DuplicateMode(String),
    #[error("target `{target}` listed twice for mode `{mode}`")]
    DuplicateTarget { mode: String, target: String },
}

impl MTSpec {
    pub fn new(modes: Vec<ModeSpec>) -> Result<Self, SpecError> {
        if modes.is_empty() {
            return Err(SpecError::NoModes);
        }
        let mut names = BTreeSet::new();
        for mode in &modes {
            if !names.insert(mode.name.as_str()) {
                return Err(SpecError::DuplicateMode(mode.name.clone()));
            }
            if mode.targets.is_empty() {
                return Err(SpecError::NoTargets(mode.name.clone()));
            }
            let mut seen = BTreeSet::new();
            for t in &mode.targets {
                if !seen.insert(t.as_str()) {
                    return Err(SpecError::DuplicateTarget {
                        mode: mode.name.clone(),
                        target: t.clone(),
                    });
                }
            }
        }
        Ok(MTSpec { modes })
    }

    /// Convenience constructor from `(mode, [targets])` pairs.
    pub fn from_names<M, T>(modes: impl IntoIterator<Item = (M, Vec<T>)>) -> Result<Self, SpecError>
    where
        M: Into<String>,
        T: Into<String>,
    {
        MTSpec::new(
            modes
                .into_iter()
                .map(|(m, ts)| ModeSpec {
                    name: m.into(),
                    targets: ts.into_iter().map(Into::into).collect(),
                })
                .collect(),
        )
    }

    pub fn modes(&self) -> &[ModeSpec] {
        &self.modes
    }

    pub fn num_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn target_counts(&self) -> Vec<usize> {
        self.modes.iter().map(|m| m.targets.len()).collect()
    }

    pub fn sum_targets(&self) -> usize {
        self.modes.iter().map(|m| m.targets.len()).sum()
    }

    pub fn max_targets(&self) -> usize {
        self.modes.iter().map(|m| m.targets.len()).max().unwrap_or(0)
    }

    /// Every proposition name the spec mentions.
    pub fn propositions(&self) -> BTreeSet<&str> {
        self.modes
            .iter()
            .flat_map(|m| std::iter::once(m.name.as_str()).chain(m.targets.iter().map(String::as_str)))
            .collect()
    }
}

impl fmt::Display for MTSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_ltl(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BindError {
    #[error("proposition `{0}` does not label any state of the game")]
    Unbound(String),
}

/// A spec resolved against a graph: every mode and target as a state set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundSpec {
    pub modes: Vec<StateSet>,
    pub targets: Vec<Vec<StateSet>>,
}

impl BoundSpec {
    pub fn bind(g: &GameGraph, spec: &MTSpec) -> Result<Self, BindError> {
        let lookup = |name: &str| {
            g.prop_id(name)
                .map(|p| g.prop_set(p))
                .ok_or_else(|| BindError::Unbound(name.to_string()))
        };
        let mut modes = Vec::with_capacity(spec.num_modes());
        let mut targets = Vec::with_capacity(spec.num_modes());
        for mode in spec.modes() {
            modes.push(lookup(&mode.name)?);
            targets.push(
                mode.targets
                    .iter()
                    .map(|t| lookup(t))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Ok(BoundSpec { modes, targets })
    }

    pub fn num_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn universe(&self) -> usize {
        self.modes[0].universe()
    }

    /// `⟦¬M_i⟧`; includes states carrying no mode at all.
    pub fn not_mode(&self, i: usize) -> StateSet {
        self.modes[i].complement()
    }

    /// `⟦M_i ∧ T_ij⟧`.
    pub fn mode_target(&self, i: usize, j: usize) -> StateSet {
        self.modes[i].intersection(&self.targets[i][j])
    }

    pub fn mode_of(&self, s: usize) -> Option<usize> {
        self.modes.iter().position(|m| m.contains(s))
    }

    pub fn any_mode(&self) -> StateSet {
        let mut all = StateSet::empty(self.universe());
        for m in &self.modes {
            all.union_with(m);
        }
        all
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExclusivityViolation {
    pub state: usize,
    pub modes: Vec<String>,
}

impl fmt::Display for ExclusivityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "state {} breaks mode exclusivity (labeled {})",
            self.state,
            self.modes.join(", ")
        )
    }
}

/// Outcome of checking that modes are mutually exclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeReport {
    pub violations: Vec<ExclusivityViolation>,
    /// States carrying no mode proposition (warnings only).
    pub unlabeled: Vec<usize>,
    pub exhaustive: bool,
}

impl ModeReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_mode_exclusivity(g: &GameGraph, spec: &MTSpec) -> Result<ModeReport, BindError> {
    let bound = BoundSpec::bind(g, spec)?;
    let mut violations = Vec::new();
    let mut unlabeled = Vec::new();
    for s in 0..g.num_states() {
        let modes: Vec<String> = spec
            .modes()
            .iter()
            .zip(&bound.modes)
            .filter(|(_, set)| set.contains(s))
            .map(|(m, _)| m.name.clone())
            .collect();
        match modes.len() {
            0 => unlabeled.push(s),
            1 => {}
            _ => violations.push(ExclusivityViolation { state: s, modes }),
        }
    }
    Ok(ModeReport {
        violations,
        exhaustive: unlabeled.is_empty(),
        unlabeled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{GameBuilder, Player};

    fn labeled(labels: &[&[&str]]) -> GameGraph {
        let mut b = GameBuilder::new(labels.len());
        for (s, ls) in labels.iter().enumerate() {
            b.set_owner(s, Player::Zero).add_edge(s, s);
            for l in *ls {
                b.add_label(s, l);
            }
        }
        b.build().unwrap()
    }

    fn two_modes() -> MTSpec {
        MTSpec::from_names([("M1", vec!["T1"]), ("M2", vec!["T2"])]).unwrap()
    }

    #[test]
    fn exclusive_and_exhaustive() {
        let g = labeled(&[&["M1", "T1"], &["M2", "T2"], &["M1"]]);
        let r = validate_mode_exclusivity(&g, &two_modes()).unwrap();
        assert!(r.is_ok());
        assert!(r.exhaustive);
    }

    #[test]
    fn overlapping_modes_are_violations() {
        let g = labeled(&[&["M1", "M2", "T1", "T2"], &["M2"]]);
        let r = validate_mode_exclusivity(&g, &two_modes()).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].state, 0);
        assert!(r.violations[0].to_string().contains("state 0 breaks mode exclusivity"));
    }

    #[test]
    fn unlabeled_states_are_warnings() {
        let g = labeled(&[&["M1", "T1"], &["M2", "T2"], &[]]);
        let r = validate_mode_exclusivity(&g, &two_modes()).unwrap();
        assert!(r.is_ok());
        assert!(!r.exhaustive);
        assert_eq!(r.unlabeled, vec![2]);
    }

    #[test]
    fn unbound_proposition() {
        let g = labeled(&[&["M1", "T1"]]);
        assert_eq!(
            validate_mode_exclusivity(&g, &two_modes()).unwrap_err(),
            BindError::Unbound("M2".into())
        );
    }

    #[test]
    fn spec_invariants() {
        assert_eq!(MTSpec::new(vec![]).unwrap_err(), SpecError::NoModes);
        assert!(matches!(
            MTSpec::from_names([("M1", vec!["T"]), ("M1", vec!["U"])]),
            Err(SpecError::DuplicateMode(_))
        ));
        assert!(matches!(
            MTSpec::from_names([("M1", vec!["T", "T"])]),
            Err(SpecError::DuplicateTarget { .. })
        ));
        assert!(matches!(
            MTSpec::from_names::<_, String>([("M1", vec![])]),
            Err(SpecError::NoTargets(_))
        ));
        let s = MTSpec::from_names([("M1", vec!["T11", "T12"]), ("M2", vec!["T21"])]).unwrap();
        assert_eq!((s.sum_targets(), s.max_targets()), (3, 2));
    }
}
