//! Parser for continued-fraction literals such as `[0;1,2,(3,4)]`.
//!
//! ```text
//! literal := '[' int ';' [ items ] ']'
//! items   := coeff { ',' coeff } [ ',' period ] | period
//! period  := '(' coeff { ',' coeff } ')'
//! ```
//!
//! Whitespace is allowed between tokens. The leading integer part is
//! accepted and dropped: only `{alpha}` matters downstream.

use super::ContinuedFraction;
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn column(&self) -> usize {
        self.src[..self.pos].chars().count() + 1
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::InvalidSpec {
            column: self.column(),
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(got) if got == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(got) => self.error(format!("expected '{c}', found '{got}'")),
            None => self.error(format!("expected '{c}', found end of input")),
        }
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

    fn integer(&mut self, allow_negative: bool) -> Result<i128> {
        self.skip_ws();
        let start = self.pos;
        if allow_negative && self.peek() == Some('-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = &self.src[start..self.pos];
        if text.is_empty() || text == "-" {
            self.pos = start;
            return self.error("expected an integer");
        }
        text.parse::<i128>().or_else(|_| {
            self.pos = start;
            self.error("integer out of range")
        })
    }

    fn coefficient(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let v = self.integer(false)?;
        if v < 1 || v > i128::from(u64::MAX) {
            self.pos = start;
            return self.error("coefficient must be an integer >= 1");
        }
        Ok(v as u64)
    }
}

pub fn parse_literal(src: &str) -> Result<ContinuedFraction> {
    let mut cur = Cursor { src, pos: 0 };
    cur.expect('[')?;
    cur.integer(true)?;
    cur.expect(';')?;
    let mut preperiod = Vec::new();
    let mut period = Vec::new();
    if !cur.eat(']') {
        loop {
            if cur.eat('(') {
                period.push(cur.coefficient()?);
                while cur.eat(',') {
                    period.push(cur.coefficient()?);
                }
                cur.expect(')')?;
                cur.expect(']')?;
                break;
            }
            preperiod.push(cur.coefficient()?);
            if cur.eat(']') {
                break;
            }
            cur.expect(',')?;
        }
    }
    cur.skip_ws();
    if cur.pos != src.len() {
        return cur.error("trailing characters after literal");
    }
    ContinuedFraction::new(preperiod, period)
}
