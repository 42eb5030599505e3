//! Potential grammar:
//!
//! ```text
//! potential   = term ("+" term)*
//! term        = [coefficient "*"] factor ("*" factor)*
//! factor      = variable ["^" positive-integer]
//! variable    = "x" positive-integer
//! coefficient = integer | integer "/" positive-integer
//! ```
//!
//! Whitespace is ignored. Coefficients default to 1 when omitted. Variables
//! must be numbered x1..xN without gaps.

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::rational::Q;
use num::bigint::BigInt;
use num::Zero;

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn positive_integer(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a positive integer"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let v: u32 = s
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        if v == 0 {
            return Err(self.err("expected a positive integer"));
        }
        Ok(v)
    }
}

/// A term before the ambient variable count is known.
struct RawTerm {
    coeff: Q,
    exps: Vec<(usize, u32)>, // (variable index 1-based, exponent)
}

fn parse_factor(lx: &mut Lexer) -> Result<(usize, u32)> {
    match lx.bump() {
        Some(b'x') => {}
        _ => return Err(lx.err("expected a variable like x1")),
    }
    let idx = lx.positive_integer()? as usize;
    let exp = if lx.peek() == Some(b'^') {
        lx.bump();
        lx.positive_integer()?
    } else {
        1
    };
    Ok((idx, exp))
}

fn parse_term(lx: &mut Lexer) -> Result<RawTerm> {
    let mut coeff = Q::new(BigInt::from(1), BigInt::from(1));
    let first_is_coeff = matches!(lx.peek(), Some(c) if c == b'-' || c.is_ascii_digit());
    if first_is_coeff {
        let num = lx.integer()?;
        let den = if lx.peek() == Some(b'/') {
            lx.bump();
            let d = lx.integer()?;
            if d <= BigInt::zero() {
                return Err(lx.err("coefficient denominator must be positive"));
            }
            d
        } else {
            BigInt::from(1)
        };
        if num.is_zero() {
            return Err(lx.err("zero coefficient"));
        }
        coeff = Q::new(num, den);
        if lx.peek() == Some(b'*') {
            lx.bump();
        } else {
            // constant term without factors is outside the grammar
            return Err(lx.err("expected '*' after coefficient"));
        }
    }
    let mut exps = vec![parse_factor(lx)?];
    while lx.peek() == Some(b'*') {
        lx.bump();
        exps.push(parse_factor(lx)?);
    }
    Ok(RawTerm { coeff, exps })
}

/// Parses a potential into canonical form. Duplicate monomials are merged.
pub fn parse_potential(text: &str) -> Result<Polynomial> {
    let mut lx = Lexer::new(text);
    let mut raw = vec![parse_term(&mut lx)?];
    while let Some(c) = lx.peek() {
        if c == b'+' {
            lx.bump();
            raw.push(parse_term(&mut lx)?);
        } else {
            return Err(lx.err("expected '+' or end of input"));
        }
    }

    let mut used = std::collections::BTreeSet::new();
    let mut max_var = 0usize;
    for t in &raw {
        for &(idx, _) in &t.exps {
            used.insert(idx);
            max_var = max_var.max(idx);
        }
    }
    if used.len() != max_var {
        let missing: Vec<String> = (1..=max_var)
            .filter(|i| !used.contains(i))
            .map(|i| format!("x{}", i))
            .collect();
        return Err(Error::UnknownVariable(missing.join(", ")));
    }

    let mut poly = Polynomial::zero(max_var);
    for t in raw {
        let mut e = vec![0u32; max_var];
        for (idx, exp) in t.exps {
            e[idx - 1] += exp;
        }
        poly.add_term(Monomial(e), t.coeff);
    }
    Ok(poly)
}
