//! Reader for the textual polynomial form.
//!
//! Accepts the canonical serialization (`3*a1^2*a2 - 1`) and, more loosely,
//! any expression built from integers, variables `a1, a2, ...`, `+ - * ^`,
//! division by an integer literal and parentheses, so factored forms such as
//! `24*35*(5*a1^2 - 5*a1*a2 + a2^2)` read back as the expanded polynomial.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Monomial, Poly, QPoly};
use crate::scalar::Coefficient;
use crate::Error;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn expr(&mut self) -> Result<QPoly, Error> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QPoly, Error> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&BigRational::new(BigInt::one(), d));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QPoly, Error> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<QPoly, Error> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QPoly, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'a') => {
                self.pos += 1;
                let idx = self.integer()?;
                let idx: usize = idx.try_into().map_err(|_| self.err("bad variable"))?;
                if idx == 0 {
                    return Err(self.err("variables are numbered from a1"));
                }
                Ok(QPoly::term(Monomial::var(idx - 1, 1), BigRational::one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(QPoly::constant(BigRational::from_integer(n)))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

/// Parses a polynomial expression over the rationals.
pub fn parse_rational(s: &str) -> Result<QPoly, Error> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

impl<C: Coefficient> FromStr for Poly<C> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let q = parse_rational(s)?;
        let mut out = Poly::zero();
        for (m, c) in q.terms() {
            let c = C::from_rational(c)
                .ok_or_else(|| Error::Parse(format!("coefficient {c} not representable")))?;
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }
}
