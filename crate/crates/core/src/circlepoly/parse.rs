//! Text syntax for polynomials.
//!
//! Two forms are accepted:
//!
//! * term lists `a0:n0,a1:n1,…` pairing a coefficient with its exponent,
//!   e.g. `1:0,1:1,1:3`;
//! * expressions such as `1+z+z^3`, `-2 + z + z^3` or `2+3z^2+4*z^3`.
//!
//! Coefficients are real decimals (`2`, `-0.5`, `1e-3`). Whitespace is
//! ignored between tokens.

use super::SparsePolynomial;
use crate::error::{Error, Result};

pub fn parse_polynomial(text: &str) -> Result<SparsePolynomial> {
    let mut cursor = Cursor::new(text);
    cursor.skip_ws();
    if cursor.at_end() {
        return Err(cursor.error("empty input"));
    }
    let terms = if text.contains(':') {
        cursor.term_list()?
    } else {
        cursor.expression()?
    };
    SparsePolynomial::from_terms(terms).map_err(|e| match e {
        Error::InvalidPolynomial(reason) => Error::Parse { offset: 0, reason },
        other => other,
    })
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, reason: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            reason: reason.into(),
        }
    }

    fn unexpected(&self) -> Error {
        match self.peek() {
            None => self.error("unexpected end of input"),
            Some('i' | 'j' | 'I') => self.error("complex coefficients are not supported"),
            Some(c) => self.error(format!("unexpected character {c:?}")),
        }
    }

    fn term_list(&mut self) -> Result<Vec<(u32, f64)>> {
        let mut terms = Vec::new();
        loop {
            self.skip_ws();
            let coeff = self.signed_number()?;
            if !self.eat(':') {
                return Err(self.unexpected());
            }
            self.skip_ws();
            let exponent = self.exponent()?;
            terms.push((exponent, coeff));
            if self.eat(',') {
                continue;
            }
            self.skip_ws();
            if self.at_end() {
                return Ok(terms);
            }
            return Err(self.unexpected());
        }
    }

    fn expression(&mut self) -> Result<Vec<(u32, f64)>> {
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') {
            -1.0
        } else {
            self.eat('+');
            1.0
        };
        loop {
            self.skip_ws();
            let (exponent, coeff) = self.term()?;
            terms.push((exponent, sign * coeff));
            self.skip_ws();
            sign = match self.peek() {
                None => return Ok(terms),
                Some('+') => 1.0,
                Some('-') => -1.0,
                Some(_) => return Err(self.unexpected()),
            };
            self.bump();
        }
    }

    /// `number [*] [z [^ exponent]]` or `z [^ exponent]`.
    fn term(&mut self) -> Result<(u32, f64)> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => Some(self.number()?),
            Some('z' | 'Z') => None,
            _ => return Err(self.unexpected()),
        };
        let explicit_mul = self.eat('*');
        self.skip_ws();
        if matches!(self.peek(), Some('z' | 'Z')) {
            self.bump();
            let exponent = if self.eat('^') {
                self.skip_ws();
                self.exponent()?
            } else {
                1
            };
            Ok((exponent, coeff.unwrap_or(1.0)))
        } else if explicit_mul || coeff.is_none() {
            Err(self.unexpected())
        } else {
            Ok((0, coeff.unwrap_or(1.0)))
        }
    }

    fn signed_number(&mut self) -> Result<f64> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        self.skip_ws();
        let value = self.number()?;
        Ok(if negative { -value } else { value })
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        let bytes = self.text.as_bytes();
        let digits = |pos: &mut usize| {
            let begin = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            *pos - begin
        };
        let mut pos = self.pos;
        let mut count = digits(&mut pos);
        if pos < bytes.len() && bytes[pos] == b'.' {
            pos += 1;
            count += digits(&mut pos);
        }
        if count == 0 {
            return Err(self.error("expected a number"));
        }
        if pos < bytes.len() && matches!(bytes[pos], b'e' | b'E') {
            let mut probe = pos + 1;
            if probe < bytes.len() && matches!(bytes[probe], b'+' | b'-') {
                probe += 1;
            }
            if digits(&mut probe) > 0 {
                pos = probe;
            }
        }
        self.pos = pos;
        let value: f64 = self.text[start..pos].parse().map_err(|_| Error::Parse {
            offset: start,
            reason: "malformed number".into(),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                offset: start,
                reason: "coefficient out of range".into(),
            });
        }
        Ok(value)
    }

    fn exponent(&mut self) -> Result<u32> {
        let start = self.pos;
        if self.peek() == Some('-') {
            return Err(self.error("negative exponent"));
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected a non-negative integer exponent"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::Parse {
                offset: start,
                reason: "exponent out of range".into(),
            })
    }
}
