mod common;

use common::{arb_instance, random_instance};
use mtgames::fixpoint::Engine;
use mtgames::gr1::embed_bound;
use mtgames::mt::{mt_operator, mt_persistence_sets};
use mtgames::strategy::{
    check_strategy, edge_sets, enumerate_memoryless_winning, extract_strategy, CheckOptions, Verdict,
    DEFAULT_ENUMERATION_BOUND,
};
use mtgames::{
    solve_gr1_emb, solve_mt, solve_mt_reference, BoundSpec, GameGraph, MTSpec, ModeSpec, Player, SolveOptions,
    StateSet,
};
use proptest::prelude::*;

fn all_options() -> impl Iterator<Item = SolveOptions> {
    [(false, false), (false, true), (true, false), (true, true)]
        .into_iter()
        .map(|(warm, record_trace)| SolveOptions { warm, record_trace })
}

fn winning(g: &GameGraph, spec: &MTSpec) -> StateSet {
    solve_mt(g, spec, SolveOptions::default()).unwrap().winning
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solvers_agree((g, spec) in arb_instance(30, 4, 3, false)) {
        let expected = solve_mt_reference(&g, &spec).unwrap();
        for opts in all_options() {
            prop_assert_eq!(&solve_mt(&g, &spec, opts).unwrap().winning, &expected);
            prop_assert_eq!(&solve_gr1_emb(&g, &spec, opts).unwrap().winning, &expected);
        }
    }

    #[test]
    fn winning_set_is_a_fixed_point((g, spec) in arb_instance(30, 4, 3, false)) {
        let w = winning(&g, &spec);
        let bound = BoundSpec::bind(&g, &spec).unwrap();
        prop_assert_eq!(mt_operator(&g, &bound, &w), w);
    }

    #[test]
    fn persistence_regions_win((g, spec) in arb_instance(30, 4, 3, false)) {
        let w = winning(&g, &spec);
        let bound = BoundSpec::bind(&g, &spec).unwrap();
        let mut engine = Engine::new(&g);
        for row in mt_persistence_sets(&bound) {
            for p in row {
                prop_assert!(engine.persist(&p, None).is_subset(&w));
            }
        }
    }

    #[test]
    fn embedding_dominates_mode_targets((g, spec) in arb_instance(30, 4, 3, false)) {
        let bound = BoundSpec::bind(&g, &spec).unwrap();
        let e = embed_bound(&bound);
        for i in 0..bound.num_modes() {
            for j in 0..bound.targets[i].len() {
                prop_assert!(bound.mode_target(i, j).is_subset(&e.persistence_set(j)));
            }
        }
    }

    #[test]
    fn mode_order_is_irrelevant((g, spec) in arb_instance(30, 4, 3, false), rotate in 0usize..4) {
        let mut modes = spec.modes().to_vec();
        let k = rotate % modes.len();
        modes.rotate_left(k);
        for m in &mut modes {
            m.targets.reverse();
        }
        let shuffled = MTSpec::new(modes).unwrap();
        prop_assert_eq!(winning(&g, &shuffled), winning(&g, &spec));
    }

    #[test]
    fn extra_target_never_shrinks((g, spec) in arb_instance(30, 4, 3, false), pick in any::<prop::sample::Index>()) {
        let props = g.propositions();
        let extra = props[pick.index(props.len())].clone();
        let mut modes: Vec<ModeSpec> = spec.modes().to_vec();
        if !modes[0].targets.contains(&extra) {
            modes[0].targets.push(extra);
        }
        let wider = MTSpec::new(modes).unwrap();
        prop_assert!(winning(&g, &spec).is_subset(&winning(&g, &wider)));
    }

    #[test]
    fn extracted_strategy_is_sound((g, spec) in arb_instance(40, 4, 3, true)) {
        let r = solve_mt(&g, &spec, SolveOptions::default()).unwrap();
        let f = extract_strategy(&g, &spec, &r).unwrap();
        let verdict = check_strategy(&g, &spec, &f, &r.winning, CheckOptions::default()).unwrap();
        prop_assert_eq!(verdict, Verdict::Pass);
        for v in r.winning.iter() {
            if g.owner(v) == Player::Zero {
                let w = f.get(v.into()).unwrap().index();
                prop_assert!(g.has_edge(v, w) && r.winning.contains(w));
            }
        }
    }

    #[test]
    fn rank_descends_outside_stay_regions((g, spec) in arb_instance(40, 4, 3, true)) {
        let r = solve_mt(&g, &spec, SolveOptions::default()).unwrap();
        let f = extract_strategy(&g, &spec, &r).unwrap();
        let bound = BoundSpec::bind(&g, &spec).unwrap();
        let trace = r.trace.as_ref().unwrap();
        for v in r.winning.iter() {
            let k = bound.mode_of(v).unwrap();
            let rank = trace.rank(k, v).unwrap();
            let stays = trace.x_ranks[k][rank]
                .iter()
                .enumerate()
                .any(|(j, x)| x.contains(v) && bound.mode_target(k, j).contains(v));
            if stays {
                continue;
            }
            let next: Vec<usize> = match g.owner(v) {
                Player::Zero => vec![f.get(v.into()).unwrap().index()],
                Player::One => g.successors(v).collect(),
            };
            for w in next {
                if bound.mode_of(w) == Some(k) {
                    prop_assert!(trace.rank(k, w).unwrap() < rank, "{} -> {}", v, w);
                }
            }
        }
    }

    #[test]
    fn edge_sets_match_their_definitions((g, spec) in arb_instance(20, 3, 3, true)) {
        let r = solve_mt(&g, &spec, SolveOptions::default()).unwrap();
        let trace = r.trace.as_ref().unwrap();
        let bound = BoundSpec::bind(&g, &spec).unwrap();
        let edges = edge_sets(&g, &bound, trace);
        for k in 0..bound.num_modes() {
            for &(v, w) in &edges.progress[k] {
                prop_assert!(trace.rank(k, w) < trace.rank(k, v));
            }
            for &(v, w) in &edges.stay[k] {
                let rank = trace.rank(k, v).unwrap();
                let inside = |j: usize| {
                    let x = &trace.x_ranks[k][rank][j];
                    x.contains(v) && x.contains(w) && bound.mode_target(k, j).contains(v)
                };
                prop_assert!((0..bound.targets[k].len()).any(inside));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn enumeration_oracle_agrees((g, spec) in arb_instance(7, 3, 2, false)) {
        let oracle = enumerate_memoryless_winning(&g, &spec, DEFAULT_ENUMERATION_BOUND).unwrap();
        prop_assert_eq!(oracle, winning(&g, &spec));
    }
}

#[test]
fn five_state_games_match_the_oracle() {
    for seed in 0..100 {
        let (g, spec) = random_instance(seed, 5, 2, 2, true);
        let oracle = enumerate_memoryless_winning(&g, &spec, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(oracle, winning(&g, &spec), "seed {seed}");
    }
}
