//! Text form of mode-target formulas.
//!
//! The input is parsed with a small propositional LTL grammar first, so that
//! well-formed formulas outside the fragment (`G M1 -> F T1`, nested
//! operators, ...) are reported as shape errors rather than syntax errors.
//!
//! ```text
//! expr    := disj ('->' expr)?
//! disj    := conj ('|' conj)*
//! conj    := until ('&' until)*
//! until   := unary ('U' unary)?
//! unary   := ('!' | 'X' | 'F' | 'G' | 'FG' | 'GF') unary | atom
//! atom    := ident | 'true' | 'false' | '(' expr ')'
//! ```

use std::fmt::Write as _;

use super::{MTSpec, ModeSpec, SpecError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LtlError {
    #[error("syntax error at column {column}: expected {expected}, found {found}")]
    Syntax {
        column: usize,
        expected: String,
        found: String,
    },
    #[error("not in MT fragment: {0}")]
    NotInFragment(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    And,
    Or,
    Implies,
    Not,
    Next,
    Eventually,
    Always,
    EventuallyAlways,
    AlwaysEventually,
    Until,
    True,
    False,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Not => "`!`".into(),
            Tok::Next => "`X`".into(),
            Tok::Eventually => "`F`".into(),
            Tok::Always => "`G`".into(),
            Tok::EventuallyAlways => "`FG`".into(),
            Tok::AlwaysEventually => "`GF`".into(),
            Tok::Until => "`U`".into(),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, LtlError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let column = |byte: usize| text[..byte].chars().count() + 1;
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let col = column(pos);
        let simple = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            '!' => Some(Tok::Not),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push((tok, col));
            i += 1;
            continue;
        }
        if c == '-' {
            if chars.get(i + 1).map(|&(_, c)| c) == Some('>') {
                out.push((Tok::Implies, col));
                i += 2;
                continue;
            }
            return Err(LtlError::Syntax {
                column: col,
                expected: "`->`".into(),
                found: "`-`".into(),
            });
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let end = chars.get(i).map_or(text.len(), |&(p, _)| p);
            let word = &text[pos..end];
            let tok = match word {
                "X" => Tok::Next,
                "F" => Tok::Eventually,
                "G" => Tok::Always,
                "FG" => Tok::EventuallyAlways,
                "GF" => Tok::AlwaysEventually,
                "U" => Tok::Until,
                "true" => Tok::True,
                "false" => Tok::False,
                _ => Tok::Ident(word.to_string()),
            };
            debug_assert!(i > start);
            out.push((tok, col));
            continue;
        }
        return Err(LtlError::Syntax {
            column: col,
            expected: "a formula".into(),
            found: format!("`{c}`"),
        });
    }
    out.push((Tok::End, column(text.len())));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Ltl {
    Prop(String),
    Const(bool),
    Not(Box<Ltl>),
    Next(Box<Ltl>),
    Eventually(Box<Ltl>),
    Always(Box<Ltl>),
    Until(Box<Ltl>, Box<Ltl>),
    And(Vec<Ltl>),
    Or(Vec<Ltl>),
    Implies(Box<Ltl>, Box<Ltl>),
}

const MAX_DEPTH: usize = 200;

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> LtlError {
        let (tok, column) = &self.toks[self.pos];
        LtlError::Syntax {
            column: *column,
            expected: expected.to_string(),
            found: tok.describe(),
        }
    }

    fn expr(&mut self) -> Result<Ltl, LtlError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("a less deeply nested formula"));
        }
        let out = self.implication();
        self.depth -= 1;
        out
    }

    fn implication(&mut self) -> Result<Ltl, LtlError> {
        let lhs = self.disj()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.expr()?;
            return Ok(Ltl::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<Ltl, LtlError> {
        let mut items = vec![self.conj()?];
        while *self.peek() == Tok::Or {
            self.bump();
            items.push(self.conj()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Ltl::Or(items) })
    }

    fn conj(&mut self) -> Result<Ltl, LtlError> {
        let mut items = vec![self.until()?];
        while *self.peek() == Tok::And {
            self.bump();
            items.push(self.until()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Ltl::And(items) })
    }

    fn until(&mut self) -> Result<Ltl, LtlError> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::Until {
            self.bump();
            let rhs = self.unary()?;
            return Ok(Ltl::Until(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ltl, LtlError> {
        let wrap: fn(Ltl) -> Ltl = match self.peek() {
            Tok::Not => |f| Ltl::Not(Box::new(f)),
            Tok::Next => |f| Ltl::Next(Box::new(f)),
            Tok::Eventually => |f| Ltl::Eventually(Box::new(f)),
            Tok::Always => |f| Ltl::Always(Box::new(f)),
            Tok::EventuallyAlways => |f| Ltl::Eventually(Box::new(Ltl::Always(Box::new(f)))),
            Tok::AlwaysEventually => |f| Ltl::Always(Box::new(Ltl::Eventually(Box::new(f)))),
            _ => return self.atom(),
        };
        self.bump();
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("a less deeply nested formula"));
        }
        let inner = self.unary()?;
        self.depth -= 1;
        Ok(wrap(inner))
    }

    fn atom(&mut self) -> Result<Ltl, LtlError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Ltl::Prop(name))
            }
            Tok::True => {
                self.bump();
                Ok(Ltl::Const(true))
            }
            Tok::False => {
                self.bump();
                Ok(Ltl::Const(false))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("a proposition, `(` or a temporal operator")),
        }
    }
}

fn flatten_and(f: Ltl, out: &mut Vec<Ltl>) {
    match f {
        Ltl::And(items) => items.into_iter().for_each(|g| flatten_and(g, out)),
        other => out.push(other),
    }
}

fn flatten_or(f: Ltl, out: &mut Vec<Ltl>) {
    match f {
        Ltl::Or(items) => items.into_iter().for_each(|g| flatten_or(g, out)),
        other => out.push(other),
    }
}

/// Matches `FG p` and returns `p`.
fn persistence_prop(f: &Ltl) -> Option<&str> {
    match f {
        Ltl::Eventually(inner) => match inner.as_ref() {
            Ltl::Always(p) => match p.as_ref() {
                Ltl::Prop(name) => Some(name),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

/// Parses `(FG M1 -> FG T11 | FG T12) & (FG M2 -> FG T21)` style text.
pub fn parse_mt_formula(text: &str) -> Result<MTSpec, LtlError> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
        depth: 0,
    };
    let formula = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error("end of input"));
    }

    let mut clauses = Vec::new();
    flatten_and(formula, &mut clauses);
    let mut modes = Vec::with_capacity(clauses.len());
    for (k, clause) in clauses.into_iter().enumerate() {
        let Ltl::Implies(lhs, rhs) = clause else {
            return Err(LtlError::NotInFragment(format!(
                "conjunct {} is not an implication `FG mode -> ...`",
                k + 1
            )));
        };
        let mode = persistence_prop(&lhs).ok_or_else(|| {
            LtlError::NotInFragment(format!(
                "left side of conjunct {} is not of the form `FG mode`",
                k + 1
            ))
        })?;
        let mut disjuncts = Vec::new();
        flatten_or(*rhs, &mut disjuncts);
        let targets = disjuncts
            .iter()
            .map(|d| persistence_prop(d).map(str::to_string))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                LtlError::NotInFragment(format!(
                    "right side of conjunct {} is not a disjunction of `FG target`",
                    k + 1
                ))
            })?;
        modes.push(ModeSpec {
            name: mode.to_string(),
            targets,
        });
    }
    Ok(MTSpec::new(modes)?)
}

/// Canonical text form accepted by [`parse_mt_formula`].
pub fn to_ltl(spec: &MTSpec) -> String {
    let mut out = String::new();
    for (i, mode) in spec.modes().iter().enumerate() {
        if i > 0 {
            out.push_str(" & ");
        }
        write!(out, "(FG {} -> ", mode.name).unwrap();
        for (j, t) in mode.targets.iter().enumerate() {
            if j > 0 {
                out.push_str(" | ");
            }
            write!(out, "FG {t}").unwrap();
        }
        out.push(')');
    }
    out
}
