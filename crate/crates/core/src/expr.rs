//! Coefficient grammar for parametrizations.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 't' | 'z' | '(' expr ')'
//! ```
//!
//! `t` is the parameter and `z` the primitive root of unity generating the
//! coefficient field. Juxtaposition multiplies, so `3z t^2` is accepted.
//! Division is only by nonzero constants.

use std::sync::Arc;

use crate::algebra::{CycloField, CycloNum, Poly1};
use crate::error::{Error, Result};

/// Parses a polynomial in `t`; error positions are 1-based columns in `src`.
pub fn parse_poly(src: &str, field: &Arc<CycloField>) -> Result<Poly1> {
    let mut p = Parser { chars: src.chars().collect(), pos: 0, field };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.error("unexpected character"));
    }
    Ok(e)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    field: &'a Arc<CycloField>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        let found = self.peek().map(|c| format!(" '{c}'")).unwrap_or_else(|| " at end".into());
        Error::Parse { line: 1, column: self.pos + 1, message: format!("{msg}{found}") }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == 't' || c == 'z' || c == '(')
    }

    fn expr(&mut self) -> Result<Poly1> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly1> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some('/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.unary()?;
                    let c = match d.degree() {
                        Some(0) => d.coeff(0),
                        _ => {
                            self.pos = at;
                            return Err(self.error("division by a non-constant or zero"));
                        }
                    };
                    acc = acc.scale(&c.inverse()?);
                }
                _ if self.starts_atom() => acc = acc.mul(&self.unary()?),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly1> {
        self.skip_ws();
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly1> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).ok().filter(|&e| e <= 10_000).ok_or_else(|| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.error("integer out of range")
        })
    }

    fn atom(&mut self) -> Result<Poly1> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let n = i64::try_from(n).map_err(|_| self.error("integer out of range"))?;
                Ok(Poly1::constant(CycloNum::from_int(self.field, n)))
            }
            Some('t') => {
                self.pos += 1;
                Ok(Poly1::var(self.field))
            }
            Some('z') => {
                self.pos += 1;
                Ok(Poly1::constant(CycloNum::root_of_unity(self.field, 1)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.error("expected a number, 't', 'z' or '('")),
        }
    }
}
