//! Structured spec file:
//!
//! ```text
//! mode <ModeName>
//! target <ModeName> <TargetName>
//! ```

use std::fmt::Write as _;

use super::{MTSpec, ModeSpec, SpecError};
use crate::game::io::{is_identifier, tokens};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Spec(#[from] SpecError),
}

pub fn parse_spec_file(text: &str) -> Result<MTSpec, SpecFileError> {
    let mut modes: Vec<ModeSpec> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| SpecFileError::Syntax { line, message };
        let toks = tokens(raw);
        let Some((&kw, args)) = toks.split_first() else {
            continue;
        };
        for name in args {
            if !is_identifier(name) {
                return Err(err(format!("invalid proposition name `{name}`")));
            }
        }
        match (kw, args) {
            ("mode", [name]) => {
                if modes.iter().any(|m| m.name == *name) {
                    return Err(err(format!("mode `{name}` declared twice")));
                }
                modes.push(ModeSpec {
                    name: name.to_string(),
                    targets: Vec::new(),
                });
            }
            ("target", [mode, target]) => {
                let Some(m) = modes.iter_mut().find(|m| m.name == *mode) else {
                    return Err(err(format!("target for undeclared mode `{mode}`")));
                };
                if m.targets.iter().any(|t| t == target) {
                    return Err(err(format!("target `{target}` listed twice for mode `{mode}`")));
                }
                m.targets.push(target.to_string());
            }
            ("mode", _) => return Err(err("expected `mode <name>`".into())),
            ("target", _) => return Err(err("expected `target <mode> <name>`".into())),
            (other, _) => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    Ok(MTSpec::new(modes)?)
}

pub fn serialize_spec(spec: &MTSpec) -> String {
    let mut out = String::new();
    for mode in spec.modes() {
        writeln!(out, "mode {}", mode.name).unwrap();
        for t in &mode.targets {
            writeln!(out, "target {} {t}", mode.name).unwrap();
        }
    }
    out
}
