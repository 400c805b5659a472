//! Line-oriented identity files.
//!
//! ```text
//! # comment
//! ID SECTION MODE ORDER LHS RHS
//! kp2 preliminaries exact 500 (* (f 1) (f 3)) (+ ...)
//! ```
//!
//! `MODE` is `exact` or `mod:M`. A leading `!` on the id marks the case as
//! suspect.

use std::path::Path;

use super::{IdentityCase, Mode, RegistryError};
use crate::qexpr::parse_all;

fn syntax(line: usize, msg: impl Into<String>) -> RegistryError {
    RegistryError::Syntax { line, msg: msg.into() }
}

pub fn parse_identities(src: &str) -> Result<Vec<IdentityCase>, RegistryError> {
    let mut out: Vec<IdentityCase> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut head = text.splitn(5, char::is_whitespace);
        let (Some(id), Some(section), Some(mode), Some(order), Some(rest)) =
            (head.next(), head.next(), head.next(), head.next(), head.next())
        else {
            return Err(syntax(line, "expected ID SECTION MODE ORDER LHS RHS"));
        };
        let (id, suspect) = match id.strip_prefix('!') {
            Some(id) => (id, true),
            None => (id, false),
        };
        let mode: Mode = mode.parse().map_err(|e: String| syntax(line, e))?;
        let default_order: usize = order.parse().map_err(|_| syntax(line, format!("bad order `{order}`")))?;
        let exprs = parse_all(rest).map_err(|e| syntax(line, e.to_string()))?;
        let [lhs, rhs]: [_; 2] =
            exprs.try_into().map_err(|v: Vec<_>| syntax(line, format!("expected 2 expressions, found {}", v.len())))?;
        if out.iter().any(|c| c.id == id) {
            return Err(RegistryError::DuplicateId(id.into()));
        }
        out.push(IdentityCase { id: id.into(), section: section.into(), lhs, rhs, mode, default_order, suspect });
    }
    Ok(out)
}

pub fn load_identities(path: &Path) -> Result<Vec<IdentityCase>, RegistryError> {
    parse_identities(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexpr::QExpr;

    #[test]
    fn parses_cases() {
        let src = "# header\n\nsq misc exact 100 (^ (f 1) 2) (* (f 1) (f 1))\n!p7 misc mod:7 50 (f 7) (^ (f 1) 7)\n";
        let cases = parse_identities(src).unwrap();
        assert_eq!(cases.len(), 2);
        assert_eq!(cases[0].lhs, QExpr::f(1).pow(2));
        assert_eq!(cases[1].mode, Mode::Mod(7));
        assert!(cases[1].suspect && !cases[0].suspect);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_identities("\na b exact 10 (f 1)\n").unwrap_err();
        assert!(matches!(err, RegistryError::Syntax { line: 2, .. }), "{err}");
        let err = parse_identities("a b mod:1 10 (f 1) (f 1)").unwrap_err();
        assert!(matches!(err, RegistryError::Syntax { line: 1, .. }));
        let err = parse_identities("a b exact 10 (f 1) (f 1)\na b exact 10 (f 1) (f 1)").unwrap_err();
        assert!(matches!(err, RegistryError::DuplicateId(_)));
    }

    #[test]
    fn round_trips_builtin_text() {
        let reg = super::super::Registry::builtin();
        let text: String = reg
            .identities
            .iter()
            .map(|c| format!("{}{} {} {} {} {} {}\n", if c.suspect { "!" } else { "" }, c.id, c.section, c.mode, c.default_order, c.lhs, c.rhs))
            .collect();
        assert_eq!(parse_identities(&text).unwrap(), reg.identities);
    }
}
