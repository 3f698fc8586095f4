//! Text grammar for scalars.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'|'/'] factor)*          juxtaposition multiplies
//! factor := atom ['^' exp]
//! atom   := INT | q | q_12 | q_21 | l1 | l2 | m1 | m2 | m12 | m112 | m1112 | mb | '(' expr ')'
//! exp    := ['-'] INT | '{' ['-'] INT '}'
//! ```
//!
//! Negative exponents and divisors must be nonzero and parameter-free.

use num_bigint::BigInt;

use super::cyclo::Cyclo;
use super::param::{Param, ParamKey, ParamScalar};
use super::ScalarError;

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
    LBrace,
    RBrace,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ScalarError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let v: BigInt = text[start..i].parse().expect("digit run");
            out.push((start, Tok::Int(v)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            i += 1;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            _ => return Err(ScalarError::Parse { pos: start, msg: format!("unexpected character '{c}'") }),
        };
        out.push((start, t));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    n: u16,
    a: i64,
    _text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ScalarError> {
        Err(ScalarError::Parse { pos: self.here(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<ParamScalar, ScalarError> {
        let mut acc = ParamScalar::zero(self.n);
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                sign = -1;
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            if sign < 0 {
                acc -= &t;
            } else {
                acc += &t;
            }
            match self.peek() {
                Some(Tok::Plus) => {
                    sign = 1;
                    self.pos += 1;
                }
                Some(Tok::Minus) => {
                    sign = -1;
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen))
    }

    fn term(&mut self) -> Result<ParamScalar, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let f = self.factor()?;
                    let c = f
                        .as_cyclo()
                        .ok_or(ScalarError::Parse { pos: at, msg: "divisor depends on parameters".into() })?;
                    let inv = c.inv().map_err(|_| ScalarError::Parse { pos: at, msg: "division by zero".into() })?;
                    acc = acc.scale(&inv);
                }
                _ if self.starts_factor() => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self) -> Result<i64, ScalarError> {
        let braced = matches!(self.peek(), Some(Tok::LBrace));
        if braced {
            self.pos += 1;
        }
        let neg = matches!(self.peek(), Some(Tok::Minus));
        if neg {
            self.pos += 1;
        }
        let v = match self.peek() {
            Some(Tok::Int(v)) => {
                let v: i64 = v.try_into().map_err(|_| ScalarError::Parse { pos: self.here(), msg: "exponent too large".into() })?;
                self.pos += 1;
                v
            }
            _ => return self.err("expected integer exponent"),
        };
        if braced {
            if !matches!(self.peek(), Some(Tok::RBrace)) {
                return self.err("expected '}'");
            }
            self.pos += 1;
        }
        Ok(if neg { -v } else { v })
    }

    fn factor(&mut self) -> Result<ParamScalar, ScalarError> {
        let at = self.here();
        let base = self.atom()?;
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.exponent()?;
        if e >= 0 {
            if let Some(c) = base.as_cyclo() {
                return Ok(ParamScalar::from_cyclo(c.pow(e).expect("nonnegative power")));
            }
            return Ok(base.pow(e as u32));
        }
        let c = base
            .as_cyclo()
            .ok_or(ScalarError::Parse { pos: at, msg: "negative power of a parameter".into() })?;
        let p = c.pow(e).map_err(|_| ScalarError::Parse { pos: at, msg: "negative power of zero".into() })?;
        Ok(ParamScalar::from_cyclo(p))
    }

    fn atom(&mut self) -> Result<ParamScalar, ScalarError> {
        let n = self.n;
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(ParamScalar::from_cyclo(Cyclo::from_bigint(n, v)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                if !matches!(self.peek(), Some(Tok::RParen)) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Ident(s)) => {
                let v = match s.as_str() {
                    "q" => ParamScalar::qpow(n, 1),
                    "q_12" => ParamScalar::qpow(n, self.a),
                    "q_21" => ParamScalar::qpow(n, -3 - self.a),
                    other => match Param::from_token(other) {
                        Some(p) => ParamScalar::monomial(Cyclo::one(n), ParamKey::single(p, 1)),
                        None => return self.err(format!("unknown symbol '{other}'")),
                    },
                };
                self.pos += 1;
                Ok(v)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a scalar for `q` of order `n` with `q_12 = q^a`, `q_21 = q^(-3-a)`.
pub fn parse_scalar(text: &str, n: u16, a: i64) -> Result<ParamScalar, ScalarError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ScalarError::Parse { pos: 0, msg: "empty scalar".into() });
    }
    let mut p = Parser { toks, pos: 0, end: text.len(), n, a, _text: text };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}
