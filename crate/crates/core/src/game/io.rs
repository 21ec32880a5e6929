//! Line-based game file format.
//!
//! ```text
//! states <n>
//! owner <state> <0|1>
//! edge <u> <v>
//! label <state> <prop> [<prop> ...]
//! ```
//!
//! Sections appear in this order; `#` starts a comment.

use std::fmt::Write as _;

use super::{GameBuilder, GameGraph, InvalidGraph, Player, ValidationReport};

#[derive(Debug, thiserror::Error)]
pub enum GameParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid game graph: {0}")]
    Invalid(ValidationReport),
}

impl From<InvalidGraph> for GameParseError {
    fn from(e: InvalidGraph) -> Self {
        GameParseError::Invalid(e.0)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Strips a trailing `#` comment and splits on whitespace.
pub(crate) fn tokens(line: &str) -> Vec<&str> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    body.split_whitespace().collect()
}

/// Largest state count accepted from a file.
pub const MAX_STATES: usize = 1 << 21;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Owner,
    Edge,
    Label,
}

pub fn load_game(text: &str) -> Result<GameGraph, GameParseError> {
    let mut builder: Option<GameBuilder> = None;
    let mut section = Section::Owner;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| GameParseError::Syntax { line, message };
        let toks = tokens(raw);
        let Some((&kw, args)) = toks.split_first() else {
            continue;
        };

        let Some(b) = builder.as_mut() else {
            if kw != "states" {
                return Err(err("expected `states <n>` before any other line".into()));
            }
            let [n] = args else {
                return Err(err("expected `states <n>`".into()));
            };
            let n = parse_index(n).map_err(err)?;
            if n > MAX_STATES {
                return Err(err(format!("state count {n} exceeds the limit of {MAX_STATES}")));
            }
            builder = Some(GameBuilder::new(n));
            continue;
        };
        let n = b.num_states();
        let state = |tok: &str| -> Result<usize, String> {
            let s = parse_index(tok)?;
            if s >= n {
                Err(format!("state {s} out of range"))
            } else {
                Ok(s)
            }
        };

        let this = match kw {
            "owner" => Section::Owner,
            "edge" => Section::Edge,
            "label" => Section::Label,
            "states" => return Err(err("duplicate `states` line".into())),
            other => return Err(err(format!("unknown keyword `{other}`"))),
        };
        if this < section {
            return Err(err(format!("`{kw}` line after a later section")));
        }
        section = this;

        match this {
            Section::Owner => {
                let [s, p] = args else {
                    return Err(err("expected `owner <state> <0|1>`".into()));
                };
                let s = state(s).map_err(err)?;
                let player = match *p {
                    "0" => Player::Zero,
                    "1" => Player::One,
                    other => return Err(err(format!("owner must be 0 or 1, got `{other}`"))),
                };
                if b.owner(s).is_some() {
                    return Err(err(format!("duplicate owner for state {s}")));
                }
                b.set_owner(s, player);
            }
            Section::Edge => {
                let [u, v] = args else {
                    return Err(err("expected `edge <u> <v>`".into()));
                };
                let u = state(u).map_err(err)?;
                // out-of-range targets are reported by validation
                let v = parse_index(v).map_err(err)?;
                b.add_edge(u, v);
            }
            Section::Label => {
                let Some((s, props)) = args.split_first() else {
                    return Err(err("expected `label <state> <prop> ...`".into()));
                };
                if props.is_empty() {
                    return Err(err("label line without propositions".into()));
                }
                let s = state(s).map_err(err)?;
                for p in props {
                    if !is_identifier(p) {
                        return Err(err(format!("invalid proposition name `{p}`")));
                    }
                    b.add_label(s, p);
                }
            }
        }
    }

    let builder = builder.ok_or(GameParseError::Syntax {
        line: text.lines().count().max(1),
        message: "missing `states <n>` line".into(),
    })?;
    Ok(builder.build()?)
}

fn parse_index(tok: &str) -> Result<usize, String> {
    tok.parse::<usize>()
        .map_err(|_| format!("expected a non-negative integer, got `{tok}`"))
}

/// Canonical text form: owners by state, edges sorted, labels by name.
pub fn serialize_game(g: &GameGraph) -> String {
    let mut out = String::new();
    let n = g.num_states();
    writeln!(out, "states {n}").unwrap();
    for s in 0..n {
        writeln!(out, "owner {s} {}", g.owner(s).tag()).unwrap();
    }
    for s in 0..n {
        for t in g.successors(s) {
            writeln!(out, "edge {s} {t}").unwrap();
        }
    }
    for s in 0..n {
        if g.labels(s).is_empty() {
            continue;
        }
        write!(out, "label {s}").unwrap();
        for name in g.label_names(s) {
            write!(out, " {name}").unwrap();
        }
        out.push('\n');
    }
    out
}
