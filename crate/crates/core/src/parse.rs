//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: integer literals, `a/b` (division by a nonzero constant),
//! the imaginary unit `I`, ring variables, `+ - * ^ ( )`. Exponents are
//! non-negative integer literals, optionally parenthesized.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};
use crate::scalar::Scalar;

/// Token reserved for the imaginary unit; never a variable name.
pub const IMAGINARY_UNIT: &str = "I";

const MAX_EXPONENT: u32 = 10_000;

pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax { offset: self.pos, message: message.into() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.factor()?;
                let c = d.as_constant().ok_or(Error::Syntax {
                    offset: at,
                    message: "division by a non-constant expression".into(),
                })?;
                if c.is_zero() {
                    return Err(Error::Syntax { offset: at, message: "division by zero".into() });
                }
                acc = acc.scale(&c.inv());
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        if self.eat(b'-') {
            return Ok(-&self.factor()?);
        }
        if self.eat(b'+') {
            return self.factor();
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32> {
        let paren = self.eat(b'(');
        let start = self.peek().map(|_| self.pos).unwrap_or(self.pos);
        if self.eat(b'-') {
            return Err(Error::NegativeExponent { offset: start });
        }
        self.eat(b'+');
        let n = self.digits()?.ok_or_else(|| self.syntax("expected an integer exponent"))?;
        if paren && !self.eat(b')') {
            return Err(self.syntax("expected `)`"));
        }
        let e: u32 = n
            .parse()
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or(Error::Syntax { offset: start, message: format!("exponent exceeds {MAX_EXPONENT}") })?;
        Ok(e)
    }

    fn digits(&mut self) -> Result<Option<String>> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        Ok(Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string()))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            None => Err(self.syntax("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                let s = self.digits()?.unwrap();
                let n: num_bigint::BigInt =
                    s.parse().map_err(|_| Error::Syntax { offset: at, message: "bad integer".into() })?;
                Ok(Polynomial::constant(self.ring, Scalar::real(num_rational::BigRational::from_integer(n))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let at = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[at..self.pos]).unwrap();
                if name == IMAGINARY_UNIT {
                    return Ok(Polynomial::constant(self.ring, Scalar::i()));
                }
                match self.ring.index_of(name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::UnknownVariable { name: name.to_string(), offset: at }),
                }
            }
            Some(c) => Err(self.syntax(format!("unexpected `{}`", c as char))),
        }
    }
}
