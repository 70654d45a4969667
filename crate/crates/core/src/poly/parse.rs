//! Recursive-descent parser for polynomial expressions such as
//! `-(1 + a11^2)^2*(9*(1 + a11^2)^2 + a02^2*a11^2)`.
//!
//! Grammar: sums of products of powers of atoms, where an atom is a number
//! (integer, decimal or `p/q` via division), a variable name, or a bracketed
//! expression. Division is only allowed by constants.

use num_traits::Zero;

use super::multipoly::MultiPoly;
use super::rational::{self, Rational};
use crate::error::{Error, Result};

pub fn parse_poly(src: &str, vars: &[&str]) -> Result<MultiPoly> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, vars };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of {:?}", self.pos, String::from_utf8_lossy(self.src)))
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

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    let k = constant_value(&d).ok_or_else(|| self.err("division by a non-constant"))?;
                    if k.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&(Rational::from_integer(1.into()) / k));
                }
                // Implicit multiplication: `2 a11` or `(x)(y)`.
                Some(c) if c == b'(' || c.is_ascii_alphabetic() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected a non-negative integer exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let n = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(MultiPoly::constant(n, rational::parse(text)?))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                Ok(MultiPoly::var(n, idx))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

fn constant_value(p: &MultiPoly) -> Option<Rational> {
    if p.total_degree() > 0 {
        return None;
    }
    Some(p.coeff(&vec![0; p.nvars()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::{frac, int};

    #[test]
    fn parses_nested_expressions() {
        let p = parse_poly("-(1 + x^2)^2*(3*y - 1/2)", &["x", "y"]).unwrap();
        assert_eq!(p.eval(&[int(1), int(1)]), int(-10));
        let q = parse_poly("2 x (x + 1) - 4", &["x"]).unwrap();
        assert_eq!(q.eval(&[int(3)]), int(20));
        assert_eq!(parse_poly("3/4", &[]).unwrap().coeff(&[]), frac(3, 4));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("x +", &["x"]).is_err());
        assert!(parse_poly("z", &["x"]).is_err());
        assert!(parse_poly("1/x", &["x"]).is_err());
        assert!(parse_poly("(x", &["x"]).is_err());
        assert!(parse_poly("x^y", &["x", "y"]).is_err());
    }
}
