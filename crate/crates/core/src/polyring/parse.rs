//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := ident | rational | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! Whitespace is insignificant and implicit multiplication is rejected. A
//! leading sign on a term (`-x1 + x2`, `x1 * -2`) is accepted so that the
//! canonical serialization always parses back.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnknownIdentifier(String),
    NegativeExponent,
    NonIntegerExponent,
    ExponentTooLarge,
    ZeroDenominator,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => {
                write!(f, "unexpected character '{c}' at position {}", self.position)
            }
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnknownIdentifier(s) => {
                write!(f, "unknown identifier '{s}' at position {}", self.position)
            }
            ParseErrorKind::NegativeExponent => {
                write!(f, "negative exponent at position {}", self.position)
            }
            ParseErrorKind::NonIntegerExponent => {
                write!(f, "exponent must be a non-negative integer literal (position {})", self.position)
            }
            ParseErrorKind::ExponentTooLarge => {
                write!(f, "exponent too large at position {}", self.position)
            }
            ParseErrorKind::ZeroDenominator => {
                write!(f, "zero denominator at position {}", self.position)
            }
        }
    }
}

impl std::error::Error for ParseError {}

/// Parses `text` into the canonical expanded polynomial over `variables`.
pub fn parse_poly(text: &str, variables: &[String]) -> Result<Poly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars: variables };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err_here());
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err_here(&self) -> ParseError {
        match self.src.get(self.pos) {
            Some(&c) => ParseError { position: self.pos, kind: ParseErrorKind::UnexpectedChar(c as char) },
            None => ParseError { position: self.pos, kind: ParseErrorKind::UnexpectedEnd },
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.signed_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.signed_term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.signed_term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed_term(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.signed_term()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.signed_term()
            }
            _ => self.term(),
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = match self.peek() {
                Some(b'-') | Some(b'+') => self.signed_term_factor()?,
                _ => self.factor()?,
            };
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn signed_term_factor(&mut self) -> Result<Poly, ParseError> {
        let neg = self.peek() == Some(b'-');
        self.pos += 1;
        let f = match self.peek() {
            Some(b'-') | Some(b'+') => self.signed_term_factor()?,
            _ => self.factor()?,
        };
        Ok(if neg { -&f } else { f })
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let start = {
                self.skip_ws();
                self.pos
            };
            match self.src.get(self.pos) {
                Some(b'-') => {
                    return Err(ParseError { position: start, kind: ParseErrorKind::NegativeExponent })
                }
                Some(c) if c.is_ascii_digit() => {}
                Some(_) => {
                    return Err(ParseError { position: start, kind: ParseErrorKind::NonIntegerExponent })
                }
                None => return Err(self.err_here()),
            }
            let digits = self.digits();
            if matches!(self.src.get(self.pos), Some(b'/') | Some(b'.')) {
                return Err(ParseError { position: start, kind: ParseErrorKind::NonIntegerExponent });
            }
            let e: u32 = digits
                .parse()
                .ok()
                .filter(|&e| e <= 10_000)
                .ok_or(ParseError { position: start, kind: ParseErrorKind::ExponentTooLarge })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err_here());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let dpos = self.pos;
                    if !matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
                        return Err(self.err_here());
                    }
                    let den: BigInt = self.digits().parse().expect("digits");
                    if den.is_zero() {
                        return Err(ParseError { position: dpos, kind: ParseErrorKind::ZeroDenominator });
                    }
                    value /= BigRational::from_integer(den);
                }
                Ok(Poly::constant(self.vars, value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Poly::var_at(self.vars, i)),
                    None => Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::UnknownIdentifier(name.to_string()),
                    }),
                }
            }
            _ => Err(self.err_here()),
        }
    }
}
