//! Brute-force winning region over all memoryless Player 0 strategies.

use rayon::prelude::*;

use super::check::bad_components;
use crate::game::{GameGraph, Player, StateSet};
use crate::spec::{BindError, BoundSpec, MTSpec};

pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, thiserror::Error)]
pub enum EnumerateError {
    #[error("{count} memoryless strategies exceed the bound of {bound}")]
    TooMany { count: u128, bound: u64 },
    #[error(transparent)]
    Bind(#[from] BindError),
}

/// Number of memoryless Player 0 strategies: the product of Player 0
/// out-degrees, saturating.
pub fn strategy_count(g: &GameGraph) -> u128 {
    (0..g.num_states())
        .filter(|&s| g.owner(s) == Player::Zero)
        .fold(1u128, |acc, s| acc.saturating_mul(g.out_degree(s) as u128))
}

/// States from which some memoryless strategy wins every play.
pub fn enumerate_memoryless_winning(g: &GameGraph, spec: &MTSpec, bound: u64) -> Result<StateSet, EnumerateError> {
    let count = strategy_count(g);
    if count > bound as u128 {
        return Err(EnumerateError::TooMany { count, bound });
    }
    let bound_spec = BoundSpec::bind(g, spec)?;
    let n = g.num_states();
    let choosers: Vec<(usize, Vec<usize>)> = (0..n)
        .filter(|&s| g.owner(s) == Player::Zero)
        .map(|s| (s, g.successors(s).collect()))
        .collect();

    let winning = (0..count as u64)
        .into_par_iter()
        .map(|mut code| {
            let mut succ: Vec<Vec<usize>> = (0..n).map(|s| g.successors(s).collect()).collect();
            for (s, options) in &choosers {
                let k = options.len() as u64;
                succ[*s] = vec![options[(code % k) as usize]];
                code /= k;
            }
            winners(&bound_spec, &succ)
        })
        .reduce(|| StateSet::empty(n), |a, b| a.union(&b));
    Ok(winning)
}

/// Complement of the states that can reach a bad component.
fn winners(bound: &BoundSpec, succ: &[Vec<usize>]) -> StateSet {
    let n = succ.len();
    let mut losing = StateSet::empty(n);
    for (_, scc) in bad_components(bound, succ, &StateSet::full(n)) {
        losing.union_with(&scc);
    }
    let mut preds = vec![Vec::new(); n];
    for (u, ws) in succ.iter().enumerate() {
        for &w in ws {
            preds[w].push(u);
        }
    }
    let mut stack: Vec<usize> = losing.iter().collect();
    while let Some(w) = stack.pop() {
        for &u in &preds[w] {
            if !losing.contains(u) {
                losing.insert(u);
                stack.push(u);
            }
        }
    }
    losing.complement()
}
