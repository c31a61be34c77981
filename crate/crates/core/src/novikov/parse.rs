//! Expression evaluator for Novikov elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' exponent)?
//! atom   := integer | 'T' | 'O' '(' 'T' '^' exponent ')' | '(' expr ')'
//! exponent := ['-'] integer | '(' expr ')'      -- must be a rational constant
//! ```
//!
//! `T^e` accepts any rational `e`; other bases only integer powers.
//! The rendered form `c*T^(e) + ... + O(T^(f))` parses back to itself.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::NovikovElement;
use crate::error::Error;
use crate::exact::{int, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum ParseError {
    Syntax { pos: usize, msg: String },
    Domain(Error),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { pos, msg } => write!(f, "at column {}: {msg}", pos + 1),
            ParseError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<Error> for ParseError {
    fn from(e: Error) -> Self {
        ParseError::Domain(e)
    }
}

type PResult<T> = std::result::Result<T, ParseError>;

/// Evaluates `src`; inversions expand to `depth` terms.
pub fn eval_expression(src: &str, depth: u32) -> PResult<NovikovElement> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
        depth,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err(format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(v)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    depth: u32,
}

impl Parser {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> PResult<NovikovElement> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<NovikovElement> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.div(&d, self.depth)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> PResult<NovikovElement> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> PResult<NovikovElement> {
        self.skip_ws();
        if self.peek() == Some('T') {
            self.pos += 1;
            let e = if self.eat('^') { self.exponent()? } else { int(1) };
            return Ok(NovikovElement::monomial(int(1), e));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.exponent()?;
            if !e.is_integer() {
                return Err(self.err("only T takes fractional powers"));
            }
            let n: i64 = e
                .to_integer()
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(n, self.depth)?);
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<NovikovElement> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some('O') => {
                self.pos += 1;
                self.expect('(')?;
                self.expect('T')?;
                self.expect('^')?;
                let f = self.exponent()?;
                self.expect(')')?;
                Ok(NovikovElement::unknown_below(f))
            }
            Some(c) if c.is_ascii_digit() => Ok(NovikovElement::constant(self.integer()?)),
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> PResult<Rational> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        if self.pos < self.chars.len() && self.chars[self.pos] == '.' {
            return Err(self.err("decimal numbers are not accepted; write p/q"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        let n: BigInt = s.parse().map_err(|_| self.err("bad integer"))?;
        Ok(Rational::from_integer(n))
    }

    /// A rational constant: signed integer, or a parenthesised constant
    /// expression such as `(-7/3)`.
    fn exponent(&mut self) -> PResult<Rational> {
        if self.eat('-') {
            return Ok(-self.exponent()?);
        }
        if self.peek() == Some('(') {
            self.pos += 1;
            let start = self.pos;
            let v = self.expr()?;
            self.expect(')')?;
            return constant_value(&v).ok_or(ParseError::Syntax {
                pos: start,
                msg: "exponent must be a rational constant".into(),
            });
        }
        self.integer()
    }
}

fn constant_value(v: &NovikovElement) -> Option<Rational> {
    if !v.is_exact() {
        return None;
    }
    match v.num_terms() {
        0 => Some(Rational::zero()),
        1 => {
            let (e, c) = v.leading().ok()?;
            e.is_zero().then_some(c)
        }
        _ => None,
    }
}
