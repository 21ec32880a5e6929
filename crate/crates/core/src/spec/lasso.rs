use std::collections::BTreeSet;

use super::MTSpec;

/// The set of propositions true at one position of a word.
pub type Letter = BTreeSet<String>;

/// Ultimately periodic word `prefix · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoWord {
    prefix: Vec<Letter>,
    cycle: Vec<Letter>,
}

impl LassoWord {
    /// Returns `None` when the cycle is empty.
    pub fn new(prefix: Vec<Letter>, cycle: Vec<Letter>) -> Option<Self> {
        if cycle.is_empty() {
            None
        } else {
            Some(LassoWord { prefix, cycle })
        }
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }
}

/// `FG p` holds on a lasso exactly when every cycle letter contains `p`.
fn persists(cycle: &[Letter], prop: &str) -> bool {
    cycle.iter().all(|letter| letter.contains(prop))
}

pub fn lasso_satisfies(spec: &MTSpec, word: &LassoWord) -> bool {
    spec.modes().iter().all(|mode| {
        !persists(&word.cycle, &mode.name) || mode.targets.iter().any(|t| persists(&word.cycle, t))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn letter(props: &[&str]) -> Letter {
        props.iter().map(|s| s.to_string()).collect()
    }

    fn spec() -> MTSpec {
        MTSpec::from_names([("M1", vec!["T11"]), ("M2", vec!["T21", "T22"])]).unwrap()
    }

    #[test]
    fn examples() {
        let w = |cycle: Vec<Letter>| LassoWord::new(vec![letter(&["M2"])], cycle).unwrap();
        assert!(lasso_satisfies(&spec(), &w(vec![letter(&["M1", "T11"])])));
        assert!(lasso_satisfies(&spec(), &w(vec![letter(&["M1"]), letter(&["M2"])])));
        assert!(!lasso_satisfies(&spec(), &w(vec![letter(&["M1"])])));
        // targets must persist individually
        assert!(!lasso_satisfies(
            &spec(),
            &w(vec![letter(&["M2", "T21"]), letter(&["M2", "T22"])])
        ));
        assert!(lasso_satisfies(
            &spec(),
            &w(vec![letter(&["M2", "T21", "T22"]), letter(&["M2", "T22"])])
        ));
        assert!(LassoWord::new(vec![], vec![]).is_none());
    }

    fn arb_letter() -> impl Strategy<Value = Letter> {
        proptest::sample::subsequence(vec!["M1", "M2", "T11", "T21", "T22"], 0..=5)
            .prop_map(|v| v.into_iter().map(String::from).collect())
    }

    proptest! {
        #[test]
        fn rotation_and_unrolling_invariant(
            prefix in proptest::collection::vec(arb_letter(), 0..4),
            cycle in proptest::collection::vec(arb_letter(), 1..6),
            rot in 0usize..6,
            k in 1usize..4,
        ) {
            let base = lasso_satisfies(&spec(), &LassoWord::new(prefix.clone(), cycle.clone()).unwrap());
            let mut rotated = cycle.clone();
            rotated.rotate_left(rot % cycle.len());
            prop_assert_eq!(base, lasso_satisfies(&spec(), &LassoWord::new(prefix.clone(), rotated).unwrap()));
            let unrolled: Vec<Letter> = cycle.iter().cloned().cycle().take(cycle.len() * k).collect();
            prop_assert_eq!(base, lasso_satisfies(&spec(), &LassoWord::new(prefix, unrolled).unwrap()));
        }

        #[test]
        fn persistent_target_satisfies_mode(cycle in proptest::collection::vec(arb_letter(), 1..6)) {
            let cycle: Vec<Letter> = cycle.into_iter().map(|mut l| {
                l.insert("M1".into());
                l.insert("T11".into());
                l.remove("M2");
                l
            }).collect();
            prop_assert!(lasso_satisfies(&spec(), &LassoWord::new(vec![], cycle).unwrap()));
        }
    }
}
