//! Prefix text form of [`QExpr`].
//!
//! ```text
//! expr := INT
//!       | (q E) | (poch A M) | (f K) | (phi K) | (psi K)
//!       | (theta SIGN UA SIGN UB)          SIGN is + or -
//!       | (* expr ...) | (^ expr INT) | (dil expr K)
//!       | (+ (INT expr) ...)
//!       | (S) | (u) | (v)                  named composites
//! ```
//!
//! The printer writes composites in their expanded form, so
//! `parse(&e.to_string()) == e` for every valid tree.

use std::fmt;

use thiserror::Error;

use super::{QExpr, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Word(String),
}

fn tokenize(src: &str) -> Vec<(usize, Tok)> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, ch)) = chars.peek() {
        match ch {
            '(' => {
                out.push((i, Tok::Open));
                chars.next();
            }
            ')' => {
                out.push((i, Tok::Close));
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c == '(' || c == ')' || c.is_whitespace() {
                        break;
                    }
                    word.push(c);
                    chars.next();
                }
                out.push((i, Tok::Word(word)));
            }
        }
    }
    out
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let pos = self.toks.get(self.pos).map_or(self.end, |t| t.0);
        Err(ParseError { pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn expect_close(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Close) => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err("expected ')'"),
        }
    }

    fn word(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => self.err("expected a word"),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let w = self.word()?;
        match w.parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos -= 1;
                self.err(format!("expected an integer, found '{w}'"))
            }
        }
    }

    fn nat(&mut self) -> Result<usize, ParseError> {
        let v = self.int()?;
        if v < 0 {
            self.pos -= 1;
            return self.err("expected a nonnegative integer");
        }
        Ok(v as usize)
    }

    fn sign(&mut self) -> Result<Sign, ParseError> {
        match self.word()?.as_str() {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            _ => {
                self.pos -= 1;
                self.err("expected '+' or '-'")
            }
        }
    }

    fn expr(&mut self) -> Result<QExpr, ParseError> {
        match self.next() {
            Some(Tok::Word(w)) => match w.parse() {
                Ok(v) => Ok(QExpr::Const(v)),
                Err(_) => {
                    self.pos -= 1;
                    self.err(format!("unexpected '{w}'"))
                }
            },
            Some(Tok::Open) => {
                let head = self.word()?;
                let e = match head.as_str() {
                    "q" => QExpr::Q(self.nat()?),
                    "poch" => {
                        let a = self.nat()?;
                        QExpr::poch(a, self.nat()?)
                    }
                    "f" => QExpr::EtaF(self.nat()?),
                    "phi" => QExpr::Phi(self.nat()?),
                    "psi" => QExpr::Psi(self.nat()?),
                    "theta" => {
                        let sa = self.sign()?;
                        let ua = self.nat()?;
                        let sb = self.sign()?;
                        QExpr::theta(sa, ua, sb, self.nat()?)
                    }
                    "*" => {
                        let mut children = Vec::new();
                        while self.peek() != Some(&Tok::Close) {
                            children.push(self.expr()?);
                        }
                        QExpr::Mul(children)
                    }
                    "^" => {
                        let base = self.expr()?;
                        base.pow(self.int()?)
                    }
                    "dil" => {
                        let base = self.expr()?;
                        base.dilate(self.nat()?)
                    }
                    "+" => {
                        let mut terms = Vec::new();
                        while self.peek() == Some(&Tok::Open) {
                            self.pos += 1;
                            let c = self.int()?;
                            let e = self.expr()?;
                            self.expect_close()?;
                            terms.push((c, e));
                        }
                        QExpr::Sum(terms)
                    }
                    "S" => QExpr::s(),
                    "u" => QExpr::u(),
                    "v" => QExpr::v(),
                    other => {
                        self.pos -= 1;
                        return self.err(format!("unknown head '{other}'"));
                    }
                };
                self.expect_close()?;
                Ok(e)
            }
            Some(Tok::Close) => {
                self.pos -= 1;
                self.err("unexpected ')'")
            }
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses and validates one expression.
pub fn parse(src: &str) -> Result<QExpr, ParseError> {
    let mut p = Parser { toks: tokenize(src), pos: 0, end: src.len() };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("trailing input");
    }
    e.validate().map_err(|err| ParseError { pos: 0, msg: err.to_string() })?;
    Ok(e)
}

/// Parses and validates a whitespace-separated sequence of expressions.
pub fn parse_all(src: &str) -> Result<Vec<QExpr>, ParseError> {
    let mut p = Parser { toks: tokenize(src), pos: 0, end: src.len() };
    let mut out = Vec::new();
    while p.pos < p.toks.len() {
        let start = p.toks[p.pos].0;
        let e = p.expr()?;
        e.validate().map_err(|err| ParseError { pos: start, msg: err.to_string() })?;
        out.push(e);
    }
    Ok(out)
}

fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

pub(super) fn write_expr(e: &QExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match e {
        QExpr::Const(c) => write!(f, "{c}"),
        QExpr::Q(k) => write!(f, "(q {k})"),
        QExpr::Pochhammer { a, m } => write!(f, "(poch {a} {m})"),
        QExpr::EtaF(k) => write!(f, "(f {k})"),
        QExpr::Phi(k) => write!(f, "(phi {k})"),
        QExpr::Psi(k) => write!(f, "(psi {k})"),
        QExpr::Theta { sa, ua, sb, ub } => {
            write!(f, "(theta {} {ua} {} {ub})", sign_str(*sa), sign_str(*sb))
        }
        QExpr::Mul(children) => {
            write!(f, "(*")?;
            for c in children {
                write!(f, " ")?;
                write_expr(c, f)?;
            }
            write!(f, ")")
        }
        QExpr::Pow(base, p) => {
            write!(f, "(^ ")?;
            write_expr(base, f)?;
            write!(f, " {p})")
        }
        QExpr::Sum(terms) => {
            write!(f, "(+")?;
            for (c, t) in terms {
                write!(f, " ({c} ")?;
                write_expr(t, f)?;
                write!(f, ")")?;
            }
            write!(f, ")")
        }
        QExpr::Dilate(base, k) => {
            write!(f, "(dil ")?;
            write_expr(base, f)?;
            write!(f, " {k})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_atoms_and_sugar() {
        assert_eq!(parse("(f 25)").unwrap(), QExpr::f(25));
        assert_eq!(parse(" (S) ").unwrap(), QExpr::s());
        assert_eq!(parse("(theta - 1 + 2)").unwrap(), QExpr::theta(Sign::Minus, 1, Sign::Plus, 2));
        assert_eq!(parse("-3").unwrap(), QExpr::Const(-3));
        assert_eq!(
            parse("(+ (1 (^ (S) -1)) (-1 (q 1)) (-1 (* (q 2) (S))))").unwrap(),
            QExpr::sum([
                (1, QExpr::s().pow(-1)),
                (-1, QExpr::q(1)),
                (-1, QExpr::product([QExpr::q(2), QExpr::s()])),
            ])
        );
    }

    #[test]
    fn parses_sequences() {
        assert_eq!(parse_all(" (f 1) (^ (f 2) 3) ").unwrap(), vec![QExpr::f(1), QExpr::f(2).pow(3)]);
        assert!(parse_all("").unwrap().is_empty());
        assert_eq!(parse_all("(f 1) (poch 4 3)").unwrap_err().pos, 6);
    }

    #[test]
    fn reports_errors() {
        assert!(parse("(f 1").is_err());
        assert!(parse("(g 1)").is_err());
        assert!(parse("(poch 5 3)").is_err());
        assert!(parse("(f 1) (f 2)").is_err());
        assert!(parse("(q -1)").is_err());
        assert!(parse("(theta * 1 + 2)").is_err());
        let e = parse("(* (f 1) (h 2))").unwrap_err();
        assert_eq!(e.pos, 10);
    }

    #[test]
    fn printer_round_trips() {
        for e in [QExpr::s1(), QExpr::u(), QExpr::v(), QExpr::Const(0), QExpr::sum([])] {
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }
}
