//! Class expressions: integers, `L`, `L^k`, `L^(p/2)`, `+`, `-`, `*` and
//! parentheses. The canonical text written by `Laurent::to_l_string` is
//! accepted back unchanged.

use motivic_core::{Error, MotWeight, Result};
use num_bigint::BigInt;
use num_traits::One;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

pub fn parse_class(src: &str) -> Result<MotWeight> {
    let mut p = Parser { src, pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }

    fn expr(&mut self) -> Result<MotWeight> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MotWeight> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MotWeight> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error("expected an integer"))
    }

    fn atom(&mut self) -> Result<MotWeight> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                if self.eat('^') {
                    let k = self.integer()?;
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| self.error("only non-negative integer powers of a sum"))?;
                    return Ok((0..k).fold(MotWeight::one(), |acc, _| &acc * &v));
                }
                Ok(v)
            }
            Some('L') => {
                self.pos += 1;
                if !self.eat('^') {
                    return Ok(MotWeight::l_pow(1));
                }
                if self.eat('(') {
                    let p = self.integer()?;
                    let half = if self.eat('/') {
                        let q = self.integer()?;
                        if q == BigInt::from(2) {
                            true
                        } else if q.is_one() {
                            false
                        } else {
                            return Err(self.error("exponent denominator must be 1 or 2"));
                        }
                    } else {
                        false
                    };
                    self.expect(')')?;
                    let p: i64 = p.try_into().map_err(|_| self.error("exponent too large"))?;
                    Ok(if half { MotWeight::l_half_pow(p) } else { MotWeight::l_pow(p) })
                } else {
                    let k: i64 = self
                        .integer()?
                        .try_into()
                        .map_err(|_| self.error("exponent too large"))?;
                    Ok(MotWeight::l_pow(k))
                }
            }
            Some(c) if c.is_ascii_digit() => Ok(MotWeight::constant(self.integer()?)),
            _ => Err(self.error("expected an integer, L or '('")),
        }
    }
}
