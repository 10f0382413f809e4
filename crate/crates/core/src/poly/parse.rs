//! Recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := factor ("*" factor)*
//! factor   := "-"? base ("^" nat)?
//! base     := rational | ident | "(" expr ")"
//! rational := int ("/" posint)?
//! ```
//!
//! Whitespace is insignificant and there is no implicit multiplication.
//! `-X^2` reads as `-(X^2)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Polynomial, VarContext};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            other => return Err(Error::Syntax { pos: start, message: format!("unexpected character `{other}`") }),
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ctx: &'a VarContext,
    bindings: Option<&'a HashMap<String, Polynomial>>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, message: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.offset(), message: message.to_string() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut base = self.base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let (tok, at) = self.bump();
            let e = match tok {
                Tok::Int(n) => n.to_u32().ok_or(Error::BadExponent { pos: at })?,
                _ => return Err(Error::BadExponent { pos: at }),
            };
            if *self.peek() == Tok::Slash {
                return Err(Error::BadExponent { pos: at });
            }
            base = base.pow(e);
        }
        Ok(if negate { -&base } else { base })
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let value = if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(d) if !d.is_zero() => {
                            self.bump();
                            Rational::new(n, d)
                        }
                        _ => return self.syntax("denominator must be a positive integer"),
                    }
                } else {
                    Rational::from_integer(n)
                };
                Ok(Polynomial::constant(self.ctx, value))
            }
            Tok::Ident(name) => {
                let at = self.offset();
                self.bump();
                if let Some(p) = self.bindings.and_then(|b| b.get(&name)) {
                    self.ctx.check_same(p.context())?;
                    return Ok(p.clone());
                }
                match self.ctx.index_of(&name) {
                    Some(i) => Ok(Polynomial::var_index(self.ctx, i)),
                    None => Err(Error::UnknownIdentifier { name, pos: at }),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => self.syntax("unexpected end of input"),
            _ => self.syntax("expected a number, identifier or `(`"),
        }
    }
}

pub fn parse_poly(text: &str, ctx: &VarContext) -> Result<Polynomial> {
    parse_with(text, ctx, None)
}

/// Parses `text`, resolving identifiers first against `bindings` (named
/// polynomials of the same context) and then against context variables.
pub fn parse_with_bindings(text: &str, ctx: &VarContext, bindings: &HashMap<String, Polynomial>) -> Result<Polynomial> {
    parse_with(text, ctx, Some(bindings))
}

fn parse_with(text: &str, ctx: &VarContext, bindings: Option<&HashMap<String, Polynomial>>) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, ctx, bindings };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("unexpected trailing input");
    }
    Ok(out)
}
