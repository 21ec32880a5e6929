//! Text formats for strategies and winning sets.
//!
//! ```text
//! # winning 2 states
//! move 0 1
//! move 1 1
//! ```
//!
//! A winning-set file has the same header followed by one `state <s>` line
//! per member. `#` starts a comment.

use std::fmt::Write;

use super::Strategy;
use crate::game::io::tokens;
use crate::game::{StateId, StateSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct StrategyParseError {
    pub line: usize,
    pub message: String,
}

fn header(winning: &StateSet) -> String {
    format!("# winning {} states\n", winning.count())
}

pub fn serialize_strategy(f: &Strategy, winning: &StateSet) -> String {
    let mut out = header(winning);
    for (s, t) in f.moves() {
        writeln!(out, "move {s} {t}").unwrap();
    }
    out
}

pub fn serialize_winning_set(winning: &StateSet) -> String {
    let mut out = header(winning);
    for s in winning {
        writeln!(out, "state {s}").unwrap();
    }
    out
}

fn parse_index(tok: &str, line: usize) -> Result<u32, StrategyParseError> {
    tok.parse().map_err(|_| StrategyParseError {
        line,
        message: format!("expected a state index, found `{tok}`"),
    })
}

pub fn parse_strategy(text: &str) -> Result<Strategy, StrategyParseError> {
    let mut f = Strategy::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        match tokens(raw).as_slice() {
            [] => {}
            ["move", s, t] => {
                let s = StateId(parse_index(s, line)?);
                let t = StateId(parse_index(t, line)?);
                if f.get(s).is_some() {
                    return Err(StrategyParseError {
                        line,
                        message: format!("state {s} has two moves"),
                    });
                }
                f.set(s, t);
            }
            other => {
                return Err(StrategyParseError {
                    line,
                    message: format!("expected `move <state> <successor>`, found `{}`", other.join(" ")),
                })
            }
        }
    }
    Ok(f)
}

/// Parses a winning-set file over a universe of `n` states.
pub fn parse_winning_set(text: &str, n: usize) -> Result<StateSet, StrategyParseError> {
    let mut set = StateSet::empty(n);
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        match tokens(raw).as_slice() {
            [] => {}
            ["state", s] => {
                let s = parse_index(s, line)? as usize;
                if s >= n {
                    return Err(StrategyParseError {
                        line,
                        message: format!("state {s} out of range (game has {n} states)"),
                    });
                }
                set.insert(s);
            }
            other => {
                return Err(StrategyParseError {
                    line,
                    message: format!("expected `state <index>`, found `{}`", other.join(" ")),
                })
            }
        }
    }
    Ok(set)
}
