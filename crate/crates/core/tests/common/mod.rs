#![allow(dead_code)]

use std::collections::BTreeSet;

use mtgames::{GameBuilder, GameGraph, MTSpec, ModeSpec, Player};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const G1: &str = "states 2\nowner 0 0\nowner 1 0\nedge 0 0\nedge 0 1\nedge 1 1\nlabel 0 M1\nlabel 1 M1 T11\n";
pub const G2: &str = "states 2\nowner 0 0\nowner 1 1\nedge 0 1\nedge 1 0\nedge 1 1\nlabel 0 M1\nlabel 1 M1 T11\n";
pub const SPEC_M1: &str = "mode M1\ntarget M1 T11\n";

/// Raw material for a labeled game: `mode[s] == None` leaves `s` unmoded
/// and `targets[i][j]` lists the states labeled `T{i}_{j}`.
#[derive(Clone, Debug)]
pub struct RawInstance {
    pub owners: Vec<Player>,
    pub succ: Vec<BTreeSet<usize>>,
    pub mode: Vec<Option<usize>>,
    pub targets: Vec<Vec<BTreeSet<usize>>>,
}

impl RawInstance {
    /// Builds the game and a spec over the modes that occur. Every first
    /// target also labels state 0 so that each target binds.
    pub fn build(&self) -> (GameGraph, MTSpec) {
        let n = self.owners.len();
        let mut mode = self.mode.clone();
        if mode.iter().all(Option::is_none) {
            mode[0] = Some(0);
        }
        let present: BTreeSet<usize> = mode.iter().flatten().copied().collect();
        let mut b = GameBuilder::new(n);
        for s in 0..n {
            b.set_owner(s, self.owners[s]);
            for &t in &self.succ[s] {
                b.add_edge(s, t);
            }
            if let Some(i) = mode[s] {
                b.add_label(s, &format!("M{i}"));
            }
        }
        let mut modes = Vec::new();
        for &i in &present {
            let mut names = Vec::new();
            for (j, states) in self.targets[i].iter().enumerate() {
                let name = format!("T{i}_{j}");
                let mut states = states.clone();
                if j == 0 {
                    states.insert(0);
                }
                if states.is_empty() {
                    continue;
                }
                for s in states {
                    b.add_label(s, &name);
                }
                names.push(name);
            }
            modes.push(ModeSpec {
                name: format!("M{i}"),
                targets: names,
            });
        }
        (b.build().unwrap(), MTSpec::new(modes).unwrap())
    }
}

pub fn random_raw(rng: &mut ChaCha8Rng, n: usize, max_m: usize, max_t: usize, exhaustive: bool) -> RawInstance {
    let m = rng.random_range(1..=max_m);
    let owners = (0..n)
        .map(|_| if rng.random_bool(0.5) { Player::Zero } else { Player::One })
        .collect();
    let succ = (0..n)
        .map(|_| {
            let d = rng.random_range(1..=3.min(n));
            (0..d).map(|_| rng.random_range(0..n)).collect()
        })
        .collect();
    let mode = (0..n)
        .map(|_| {
            if !exhaustive && rng.random_bool(0.2) {
                None
            } else {
                Some(rng.random_range(0..m))
            }
        })
        .collect();
    let targets = (0..m)
        .map(|_| {
            let t = rng.random_range(1..=max_t);
            (0..t)
                .map(|_| (0..n).filter(|_| rng.random_bool(0.4)).collect())
                .collect()
        })
        .collect();
    RawInstance {
        owners,
        succ,
        mode,
        targets,
    }
}

/// A seeded small instance with `n` states.
pub fn random_instance(seed: u64, n: usize, max_m: usize, max_t: usize, exhaustive: bool) -> (GameGraph, MTSpec) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_raw(&mut rng, n, max_m, max_t, exhaustive).build()
}

pub fn arb_instance(max_n: usize, max_m: usize, max_t: usize, exhaustive: bool) -> impl Strategy<Value = (GameGraph, MTSpec)> {
    (1..=max_n, any::<u64>()).prop_map(move |(n, seed)| random_instance(seed, n, max_m, max_t, exhaustive))
}
