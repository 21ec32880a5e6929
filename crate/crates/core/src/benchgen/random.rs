//! Seeded random mode-target games.
//!
//! The graph, owners and modes are drawn from one ChaCha stream and each
//! target `(i, j)` from its own stream, so instances that differ only in
//! target counts share the graph and every common target.

use std::ops::RangeInclusive;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::game::{GameBuilder, GameGraph, Player};
use crate::spec::{MTSpec, ModeSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OwnerMode {
    /// Even states belong to Player 0, odd states to Player 1.
    Alternating,
    Random,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomGameParams {
    pub states: usize,
    /// Target count per mode; the mode count is its length.
    pub targets: Vec<usize>,
    /// Expected out-degree.
    pub edge_density: f64,
    /// Probability that a state carries a given target label.
    pub target_density: f64,
    pub owners: OwnerMode,
    pub seed: u64,
}

impl RandomGameParams {
    pub fn new(states: usize, targets: Vec<usize>, edge_density: f64, seed: u64) -> Self {
        RandomGameParams {
            states,
            targets,
            edge_density,
            target_density: 0.3,
            owners: OwnerMode::Alternating,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RandomGameError {
    #[error("at least one mode is required")]
    NoModes,
    #[error("mode {0} has no targets")]
    NoTargets(usize),
    #[error("{states} states cannot host {modes} nonempty modes")]
    TooFewStates { states: usize, modes: usize },
    #[error("edge density {0} must lie in [1, states]")]
    EdgeDensity(f64),
    #[error("target density {0} must lie in (0, 1]")]
    TargetDensity(f64),
    #[error("empty target range")]
    EmptyRange,
}

pub fn mode_name(i: usize) -> String {
    format!("M{}", i + 1)
}

pub fn target_name(i: usize, j: usize) -> String {
    format!("T{}_{}", i + 1, j + 1)
}

fn target_stream(seed: u64, i: usize, j: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1 + ((i as u64) << 32) + j as u64);
    rng
}

pub fn gen_random_game(p: &RandomGameParams) -> Result<(GameGraph, MTSpec), RandomGameError> {
    let n = p.states;
    let m = p.targets.len();
    if m == 0 {
        return Err(RandomGameError::NoModes);
    }
    if let Some(i) = p.targets.iter().position(|&t| t == 0) {
        return Err(RandomGameError::NoTargets(i));
    }
    if n < m {
        return Err(RandomGameError::TooFewStates { states: n, modes: m });
    }
    if !(p.edge_density >= 1.0 && p.edge_density <= n as f64) {
        return Err(RandomGameError::EdgeDensity(p.edge_density));
    }
    if !(p.target_density > 0.0 && p.target_density <= 1.0) {
        return Err(RandomGameError::TargetDensity(p.target_density));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut b = GameBuilder::new(n);
    let degree = Binomial::new(n as u64, p.edge_density / n as f64).expect("probability in [0, 1]");
    for s in 0..n {
        let owner = match p.owners {
            OwnerMode::Alternating if s % 2 == 0 => Player::Zero,
            OwnerMode::Alternating => Player::One,
            OwnerMode::Random if rng.random_bool(0.5) => Player::Zero,
            OwnerMode::Random => Player::One,
        };
        b.set_owner(s, owner);
        let d = degree.sample(&mut rng) as usize;
        if d == 0 {
            b.add_edge(s, s);
        }
        for t in index::sample(&mut rng, n, d) {
            b.add_edge(s, t);
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut mode_of = vec![0; n];
    for (pos, &s) in order.iter().enumerate() {
        mode_of[s] = pos % m;
        b.add_label(s, &mode_name(pos % m));
    }

    for (i, &t) in p.targets.iter().enumerate() {
        let members: Vec<usize> = (0..n).filter(|&s| mode_of[s] == i).collect();
        for j in 0..t {
            let mut rng = target_stream(p.seed, i, j);
            let name = target_name(i, j);
            let mut hit_mode = false;
            for s in 0..n {
                if rng.random_bool(p.target_density) {
                    b.add_label(s, &name);
                    hit_mode |= mode_of[s] == i;
                }
            }
            if !hit_mode {
                let s = members[rng.random_range(0..members.len())];
                b.add_label(s, &name);
            }
        }
    }

    let g = b.build().expect("random game is well formed");
    let spec = MTSpec::new(
        p.targets
            .iter()
            .enumerate()
            .map(|(i, &t)| ModeSpec {
                name: mode_name(i),
                targets: (0..t).map(|j| target_name(i, j)).collect(),
            })
            .collect(),
    )
    .expect("random spec is well formed");
    Ok((g, spec))
}

/// One instance per `x` in `extra`, with mode 1 holding `x` targets and every
/// other mode a single target.
pub fn gen_multi_target_series(
    base: &RandomGameParams,
    extra: RangeInclusive<usize>,
) -> Result<Vec<(GameGraph, MTSpec)>, RandomGameError> {
    if extra.is_empty() {
        return Err(RandomGameError::EmptyRange);
    }
    extra
        .map(|x| {
            let mut p = base.clone();
            p.targets = vec![1; base.targets.len().max(1)];
            p.targets[0] = x;
            gen_random_game(&p)
        })
        .collect()
}
