//! Solvers for mode-target games: the direct fixed point, its GR(1)
//! embedding, strategy extraction and checking, and benchmark generators.

pub mod benchgen;
pub mod cli;
pub mod fixpoint;
pub mod game;
pub mod gr1;
pub mod mt;
pub mod spec;
pub mod strategy;

pub use fixpoint::{FixpointStats, FixpointTrace};
pub use game::{
    load_game, serialize_game, validate_graph, GameBuilder, GameGraph, GameParseError, Player, StateId, StateSet,
};
pub use gr1::{embed, solve_gr1, solve_gr1_emb, EmbeddedGR1, GR1Spec};
pub use mt::{solve_mt, solve_mt_reference, MTSolveResult, SolveError, SolveOptions};
pub use spec::{
    lasso_satisfies, parse_mt_formula, parse_spec_file, to_ltl, validate_mode_exclusivity, BoundSpec, LassoWord,
    MTSpec, ModeSpec,
};
pub use strategy::{check_strategy, enumerate_memoryless_winning, extract_strategy, Strategy, Verdict};
