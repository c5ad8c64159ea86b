//! Text grammar: `3/2*x^2*y - y + sqrt(2)*x`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, Poly, Vars};
use crate::error::{Error, Result};
use crate::quad::{Quad, Rat};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((Tok::Num(text.parse().expect("digits")), col));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(err(col, format!("unexpected character `{c}`"))),
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a Vars,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect_num(&mut self) -> Result<BigInt> {
        let col = self.col();
        match self.next() {
            Some(Tok::Num(n)) => Ok(n),
            _ => Err(err(col, "expected integer")),
        }
    }

    fn factor(&mut self, coeff: &mut Quad, exps: &mut [u32]) -> Result<()> {
        let col = self.col();
        match self.next() {
            Some(Tok::Num(n)) => {
                let mut r = Rat::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.next();
                    let dcol = self.col();
                    let d = self.expect_num()?;
                    if d.is_zero() {
                        return Err(err(dcol, "zero denominator"));
                    }
                    r /= Rat::from_integer(d);
                }
                *coeff = &*coeff * &Quad::from_rat(r);
            }
            Some(Tok::Ident(name)) if name == "sqrt" && self.peek() == Some(&Tok::LParen) => {
                self.next();
                let n = self.expect_num()?;
                let rcol = self.col();
                if self.next() != Some(Tok::RParen) {
                    return Err(err(rcol, "expected `)`"));
                }
                let s = Quad::new(Rat::zero(), Rat::one(), &n).map_err(|e| err(col, e.to_string()))?;
                *coeff = coeff.checked_mul(&s).map_err(|e| err(col, e.to_string()))?;
            }
            Some(Tok::Ident(name)) => {
                let idx = self
                    .vars
                    .index_of(&name)
                    .ok_or_else(|| err(col, format!("unknown variable `{name}`")))?;
                let mut e = 1u32;
                if self.peek() == Some(&Tok::Caret) {
                    self.next();
                    let ecol = self.col();
                    let n = self.expect_num()?;
                    e = u32::try_from(n).map_err(|_| err(ecol, "exponent too large"))?;
                }
                exps[idx] += e;
            }
            _ => return Err(err(col, "expected coefficient or variable")),
        }
        Ok(())
    }

    fn term(&mut self, sign: i64) -> Result<(Monomial, Quad)> {
        let mut coeff = Quad::from_int(sign);
        let mut exps = vec![0u32; self.vars.len()];
        self.factor(&mut coeff, &mut exps)?;
        while self.peek() == Some(&Tok::Star) {
            self.next();
            self.factor(&mut coeff, &mut exps)?;
        }
        Ok((Monomial(exps), coeff))
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut out = Poly::zero(self.vars);
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                sign = -1;
            }
            Some(Tok::Plus) => {
                self.next();
            }
            _ => {}
        }
        loop {
            let (m, c) = self.term(sign)?;
            out = out.try_add(&Poly::term(self.vars, m, c)).map_err(|e| err(self.col(), e.to_string()))?;
            let col = self.col();
            match self.next() {
                None => break,
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                Some(_) => return Err(err(col, "expected `+` or `-`")),
            }
        }
        Ok(out)
    }
}

pub(crate) fn parse_poly(s: &str, vars: &Vars) -> Result<Poly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(err(1, "empty polynomial"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        end_col: s.chars().count() + 1,
    };
    p.poly()
}
