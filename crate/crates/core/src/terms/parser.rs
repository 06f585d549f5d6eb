//! Recursive-descent parser for the concrete term syntax:
//!
//! ```text
//! term := '0' | '1' | 'x' digits | '~' term | term op term | '(' term ')'
//! ```
//!
//! with binding strength `~ > & > (+) > /\ > \/ > ->`, all binary operators
//! left-associative.

use super::Term;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Zero,
    One,
    Var(usize),
    Not,
    Odot,
    Oplus,
    Wedge,
    Vee,
    Imp,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let rest = &text[i..];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                match &text[start..i] {
                    "0" => Tok::Zero,
                    "1" => Tok::One,
                    other => {
                        return Err(Error::Syntax {
                            pos: start,
                            msg: format!("unexpected number {other:?}; only 0 and 1 are constants"),
                        })
                    }
                }
            }
            b'x' => {
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(Error::Syntax { pos: start, msg: "variable needs an index, e.g. x0".into() });
                }
                let idx = text[digits_start..i]
                    .parse()
                    .map_err(|_| Error::Syntax { pos: start, msg: "variable index too large".into() })?;
                Tok::Var(idx)
            }
            _ if rest.starts_with("(+)") => {
                i += 3;
                Tok::Oplus
            }
            _ if rest.starts_with("\\/") => {
                i += 2;
                Tok::Vee
            }
            _ if rest.starts_with("/\\") => {
                i += 2;
                Tok::Wedge
            }
            _ if rest.starts_with("->") => {
                i += 2;
                Tok::Imp
            }
            b'~' => {
                i += 1;
                Tok::Not
            }
            b'&' => {
                i += 1;
                Tok::Odot
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            _ => {
                let op: String = rest
                    .chars()
                    .take_while(|ch| !ch.is_alphanumeric() && !ch.is_whitespace() && !"()".contains(*ch))
                    .collect();
                let op = if op.is_empty() { rest.chars().next().unwrap().to_string() } else { op };
                return Err(Error::UnknownOperator { pos: start, op });
            }
        };
        out.push((tok, start));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn binary_level(
        &mut self,
        op: Tok,
        next: fn(&mut Self) -> Result<Term>,
        build: fn(Term, Term) -> Term,
    ) -> Result<Term> {
        let mut left = next(self)?;
        while self.eat(&op) {
            let right = next(self)?;
            left = build(left, right);
        }
        Ok(left)
    }

    fn imp(&mut self) -> Result<Term> {
        self.binary_level(Tok::Imp, Self::vee, Term::imp)
    }

    fn vee(&mut self) -> Result<Term> {
        self.binary_level(Tok::Vee, Self::wedge, Term::vee)
    }

    fn wedge(&mut self) -> Result<Term> {
        self.binary_level(Tok::Wedge, Self::oplus, Term::wedge)
    }

    fn oplus(&mut self) -> Result<Term> {
        self.binary_level(Tok::Oplus, Self::odot, Term::oplus)
    }

    fn odot(&mut self) -> Result<Term> {
        self.binary_level(Tok::Odot, Self::unary, Term::odot)
    }

    fn unary(&mut self) -> Result<Term> {
        if self.eat(&Tok::Not) {
            return Ok(Term::neg(self.unary()?));
        }
        let at = self.offset();
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Zero) => Ok(Term::zero()),
            Some(Tok::One) => Ok(Term::one()),
            Some(Tok::Var(i)) => Ok(Term::var(i)),
            Some(Tok::LParen) => {
                let inner = self.imp()?;
                if !self.eat(&Tok::RParen) {
                    return Err(Error::Syntax { pos: self.offset(), msg: "expected ')'".into() });
                }
                Ok(inner)
            }
            Some(t) => Err(Error::Syntax { pos: at, msg: format!("unexpected {t:?}") }),
            None => Err(Error::Syntax { pos: at, msg: "unexpected end of input".into() }),
        }
    }
}

/// Parses a term; sugar is expanded to the core constructors.
pub fn parse_term(text: &str) -> Result<Term> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let t = p.imp()?;
    if p.pos < p.toks.len() {
        return Err(Error::Syntax { pos: p.offset(), msg: "trailing input".into() });
    }
    Ok(t)
}
