//! Text grammar for rational functions over `F_p`:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := power (['*' | '/'] power)*      juxtaposition multiplies: "2t^3"
//! power  := atom ('^' digits)?
//! atom   := digits | 't' | '(' expr ')'
//! ```
//!
//! Integer literals used as coefficients must be residues `0..p-1`.

use super::fp_poly::FpPoly;
use super::ratfun::RatFun;
use super::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Token {
    Num(u64),
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> std::result::Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut n: u64 = 0;
                while let Some(&d) = chars.peek() {
                    let Some(v) = d.to_digit(10) else { break };
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(v as u64))
                        .ok_or("integer literal too large")?;
                    chars.next();
                }
                out.push(Token::Num(n));
            }
            _ => {
                chars.next();
                out.push(match c {
                    't' => Token::T,
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '(' => Token::Open,
                    ')' => Token::Close,
                    other => return Err(format!("unexpected character {other:?}")),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    p: u64,
}

impl Parser {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> std::result::Result<RatFun, String> {
        let negate = if self.peek() == Some(Token::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> std::result::Result<RatFun, String> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = acc.mul(&self.power()?);
                }
                Some(Token::Slash) => {
                    self.bump();
                    acc = acc
                        .div(&self.power()?)
                        .map_err(|_| "division by zero".to_string())?;
                }
                Some(Token::Num(_) | Token::T | Token::Open) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> std::result::Result<RatFun, String> {
        let base = self.atom()?;
        if self.peek() == Some(Token::Caret) {
            self.bump();
            match self.bump() {
                Some(Token::Num(e)) => Ok(base.pow(e)),
                _ => Err("expected exponent after '^'".into()),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> std::result::Result<RatFun, String> {
        match self.bump() {
            Some(Token::Num(n)) => {
                if n >= self.p {
                    return Err(format!("coefficient {n} is not a residue mod {}", self.p));
                }
                Ok(RatFun::constant(self.p, n))
            }
            Some(Token::T) => Ok(RatFun::poly(FpPoly::monomial(self.p, 1))),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err("missing ')'".into()),
                }
            }
            Some(other) => Err(format!("unexpected token {other:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

pub fn parse_ratfun(text: &str, p: u64) -> Result<RatFun> {
    let err = |reason: String| Error::Parse {
        text: text.to_string(),
        reason,
    };
    let tokens = tokenize(text).map_err(err)?;
    if tokens.is_empty() {
        return Err(err("empty expression".into()));
    }
    let mut parser = Parser { tokens, pos: 0, p };
    let value = parser.expr().map_err(err)?;
    if parser.pos != parser.tokens.len() {
        return Err(err(format!("trailing input at token {}", parser.pos)));
    }
    Ok(value)
}
