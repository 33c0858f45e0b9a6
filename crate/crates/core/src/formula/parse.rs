//! Precedence-climbing parser.
//!
//! Binding strength, tightest first: `^n`, `*`, `&`, `|`, `->` (right
//! associative), `<->` (non-associative). `0` and `bot` denote the least
//! element, `1` the unit.

use super::Formula;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    Star,
    Amp,
    Bar,
    Arrow,
    Iff,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'*' => Tok::Star,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..=i];
                let n = digits.parse().map_err(|_| Error::Syntax {
                    pos: start,
                    msg: format!("number `{digits}` too large"),
                })?;
                Tok::Num(n)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_owned())
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(Error::Syntax { pos: start, msg: format!("unexpected character `{ch}`") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let l = self.imp()?;
        if self.eat(&Tok::Iff) {
            let r = self.imp()?;
            if self.peek() == Some(&Tok::Iff) {
                return self.err("`<->` is not associative; add parentheses");
            }
            return Ok(Formula::iff(l, r));
        }
        Ok(l)
    }

    fn imp(&mut self) -> Result<Formula> {
        let l = self.join()?;
        if self.eat(&Tok::Arrow) {
            let r = self.imp()?;
            return Ok(Formula::imp(l, r));
        }
        Ok(l)
    }

    fn join(&mut self) -> Result<Formula> {
        let mut l = self.meet()?;
        while self.eat(&Tok::Bar) {
            l = Formula::join(l, self.meet()?);
        }
        Ok(l)
    }

    fn meet(&mut self) -> Result<Formula> {
        let mut l = self.fuse()?;
        while self.eat(&Tok::Amp) {
            l = Formula::meet(l, self.fuse()?);
        }
        Ok(l)
    }

    fn fuse(&mut self) -> Result<Formula> {
        let mut l = self.power()?;
        while self.eat(&Tok::Star) {
            l = Formula::fuse(l, self.power()?);
        }
        Ok(l)
    }

    fn power(&mut self) -> Result<Formula> {
        let mut base = self.atom()?;
        while self.eat(&Tok::Caret) {
            match self.peek() {
                Some(&Tok::Num(n)) if n >= 1 && n <= u32::MAX as u64 => {
                    self.pos += 1;
                    base = Formula::power(base, n as u32);
                }
                _ => return self.err("expected a positive integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Formula> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        match tok {
            Tok::Ident(name) => {
                self.pos += 1;
                Ok(if name == "bot" { Formula::Bot } else { Formula::Var(name) })
            }
            Tok::Num(0) => {
                self.pos += 1;
                Ok(Formula::Bot)
            }
            Tok::Num(1) => {
                self.pos += 1;
                Ok(Formula::One)
            }
            Tok::Num(n) => self.err(format!("constant `{n}` is neither 0 nor 1")),
            Tok::LParen => {
                self.pos += 1;
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            _ => self.err("expected a variable, constant or `(`"),
        }
    }
}

pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser { toks: lex(text)?, pos: 0, end: text.len() };
    let f = p.iff()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}
