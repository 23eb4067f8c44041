//! Recursive-descent parser for polynomial text such as `x^2 - 3*x*y`.
//!
//! Grammar:
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```

use super::polynomial::{PolyRing, Polynomial};
use crate::error::{EngineError, Result};

/// A byte cursor that tracks line and column for error messages.
pub struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Self::at(src, 1, 1)
    }

    /// A cursor whose first byte sits at the given position of a larger text.
    pub fn at(src: &'a str, line: usize, col: usize) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
            line,
            col,
        }
    }

    pub fn position(&self) -> (usize, usize) {
        (self.line, self.col)
    }

    pub fn error(&self, message: impl Into<String>) -> EngineError {
        EngineError::Parse {
            line: self.line,
            column: self.col,
            message: message.into(),
        }
    }

    pub fn skip_ws(&mut self) {
        while let Some(&b) = self.src.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.src.get(self.pos) {
                    if c == b'\n' {
                        break;
                    }
                    self.bump();
                }
            } else if b.is_ascii_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn bump(&mut self) {
        if let Some(&b) = self.src.get(self.pos) {
            self.pos += 1;
            if b == b'\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
    }

    pub fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected '{}'", b as char)))
        }
    }

    /// Error of the form "`expected`, found <next token>".
    pub fn unexpected(&mut self, expected: &str) -> EngineError {
        let found = self.describe_next();
        self.error(format!("{expected}, found {found}"))
    }

    pub fn describe_next(&mut self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(b) if b.is_ascii_graphic() => format!("'{}'", b as char),
            Some(b) => format!("byte 0x{b:02x}"),
        }
    }

    pub fn ident(&mut self) -> Option<String> {
        let b = self.peek()?;
        if !(b.is_ascii_alphabetic() || b == b'_') {
            return None;
        }
        let start = self.pos;
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.bump();
            } else {
                break;
            }
        }
        Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    pub fn digits(&mut self) -> Option<String> {
        let b = self.peek()?;
        if !b.is_ascii_digit() {
            return None;
        }
        let start = self.pos;
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_digit() {
                self.bump();
            } else {
                break;
            }
        }
        Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    pub fn integer(&mut self) -> Result<u64> {
        let d = self
            .digits()
            .ok_or_else(|| self.unexpected("expected integer"))?;
        d.parse()
            .map_err(|_| self.error(format!("integer {d} is too large")))
    }
}

const MAX_EXPONENT: u64 = 4096;

pub struct PolyParser<'r> {
    ring: &'r PolyRing,
}

impl<'r> PolyParser<'r> {
    pub fn new(ring: &'r PolyRing) -> Self {
        PolyParser { ring }
    }

    pub fn expr(&self, c: &mut Cursor) -> Result<Polynomial> {
        let r = self.ring;
        let mut acc = if c.eat(b'-') {
            r.neg(&self.term(c)?)
        } else {
            c.eat(b'+');
            self.term(c)?
        };
        loop {
            if c.eat(b'+') {
                acc = r.add(&acc, &self.term(c)?);
            } else if c.eat(b'-') {
                acc = r.sub(&acc, &self.term(c)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&self, c: &mut Cursor) -> Result<Polynomial> {
        let mut acc = self.factor(c)?;
        while c.eat(b'*') {
            acc = self.ring.mul(&acc, &self.factor(c)?);
        }
        Ok(acc)
    }

    fn factor(&self, c: &mut Cursor) -> Result<Polynomial> {
        let base = self.atom(c)?;
        if c.eat(b'^') {
            let e = c.integer()?;
            if e > MAX_EXPONENT {
                return Err(c.error(format!("exponent {e} exceeds {MAX_EXPONENT}")));
            }
            Ok(self.ring.pow(&base, e as u32))
        } else {
            Ok(base)
        }
    }

    fn atom(&self, c: &mut Cursor) -> Result<Polynomial> {
        if c.eat(b'(') {
            let e = self.expr(c)?;
            c.expect(b')')?;
            return Ok(e);
        }
        if let Some(d) = c.digits() {
            let coef = self
                .ring
                .field()
                .from_decimal(&d)
                .ok_or_else(|| c.error("malformed integer"))?;
            return Ok(self.ring.constant(coef));
        }
        let (line, column) = c.position();
        if let Some(name) = c.ident() {
            return match self.ring.var_index(&name) {
                Some(i) => Ok(self.ring.var(i)),
                None => Err(EngineError::Parse {
                    line,
                    column,
                    message: format!("unknown variable '{name}'"),
                }),
            };
        }
        Err(c.unexpected("expected integer, variable or '('"))
    }
}

impl PolyRing {
    /// Parses a complete polynomial expression.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        let mut c = Cursor::new(text);
        let p = PolyParser::new(self).expr(&mut c)?;
        if !c.at_end() {
            let found = c.describe_next();
            return Err(c.error(format!("unexpected {found}")));
        }
        Ok(p)
    }
}
