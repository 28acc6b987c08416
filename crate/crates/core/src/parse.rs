//! Text form of monomial ideals.
//!
//! ```text
//! ideal    := monomial ((',' | ';') monomial)*
//! monomial := factor (('*' | WS) factor)*
//! factor   := var ('^' uint)?
//! var      := [a-zA-Z][a-zA-Z0-9_]*
//! ```
//!
//! `#` starts a comment that runs to the end of the line. The literal `1`
//! parses as the unit monomial so that it can be rejected with its own error.

use std::sync::Arc;

use crate::error::{Error, Result, MAX_EXPONENT};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, VariableTable};

/// Result of parsing: the minimalized ideal plus the input monomials that
/// minimalization discarded.
#[derive(Debug, Clone)]
pub struct ParsedIdeal {
    pub ideal: MonomialIdeal,
    pub dropped: Vec<Monomial>,
}

/// Parses with a variable table inferred in first-occurrence order.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    parse_ideal_with(text, None).map(|p| p.ideal)
}

/// Parses against an explicit variable order when `vars` is given.
pub fn parse_ideal_with(text: &str, vars: Option<&[String]>) -> Result<ParsedIdeal> {
    parse_at(text, vars, 1)
}

/// One ideal per nonblank, non-comment line. Each entry carries its 1-based
/// line number.
pub fn parse_batch(text: &str, vars: Option<&[String]>) -> Vec<(usize, String, Result<ParsedIdeal>)> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| {
            let body = line.split('#').next().unwrap_or("");
            !body.trim().is_empty()
        })
        .map(|(i, line)| (i + 1, line.to_string(), parse_at(line, vars, i + 1)))
        .collect()
}

fn parse_at(text: &str, vars: Option<&[String]>, first_line: usize) -> Result<ParsedIdeal> {
    let raw = Parser::new(text, first_line).ideal()?;
    let ring = match vars {
        Some(names) => VariableTable::new(names.iter().cloned())?,
        None => {
            let mut names: Vec<String> = Vec::new();
            for factor in raw.iter().flatten() {
                if !names.contains(&factor.name) {
                    names.push(factor.name.clone());
                }
            }
            VariableTable::new(names)?
        }
    };
    let monomials = raw
        .iter()
        .map(|factors| build_monomial(&ring, factors))
        .collect::<Result<Vec<_>>>()?;
    let (ideal, dropped) = MonomialIdeal::minimalize_reporting(&ring, monomials)?;
    Ok(ParsedIdeal { ideal, dropped })
}

fn build_monomial(ring: &Arc<VariableTable>, factors: &[Factor]) -> Result<Monomial> {
    let pairs = factors
        .iter()
        .map(|f| {
            ring.index_of(&f.name)
                .map(|i| (i, f.exp))
                .ok_or_else(|| Error::UnknownVariable(f.name.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    Monomial::from_pairs(ring, &pairs)
}

#[derive(Debug)]
struct Factor {
    name: String,
    exp: u32,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Parser {
    fn new(src: &str, line: usize) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            line,
            col: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    /// Skips whitespace and comments; reports whether anything was skipped.
    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == '#' {
                while matches!(self.peek(), Some(c) if c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
        self.pos != start
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: self.line,
            column: self.col,
            message: message.into(),
        })
    }

    fn ideal(&mut self) -> Result<Vec<Vec<Factor>>> {
        self.skip_ws();
        if self.peek().is_none() {
            return Err(Error::EmptyIdeal);
        }
        let mut out = vec![self.monomial()?];
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some(',') | Some(';') => {
                    self.bump();
                    self.skip_ws();
                    out.push(self.monomial()?);
                }
                Some(c) => return self.error(format!("expected `,` or `;`, found `{c}`")),
            }
        }
    }

    fn monomial(&mut self) -> Result<Vec<Factor>> {
        if self.peek() == Some('1') {
            let (line, col) = (self.line, self.col);
            self.bump();
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                return Err(Error::Syntax {
                    line,
                    column: col,
                    message: "numeric coefficients are not allowed".into(),
                });
            }
            return Err(Error::UnitGenerator);
        }
        let mut factors = vec![self.factor()?];
        loop {
            let had_ws = self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    self.skip_ws();
                    factors.push(self.factor()?);
                }
                Some(c) if had_ws && c.is_ascii_alphabetic() => factors.push(self.factor()?),
                _ => return Ok(factors),
            }
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        let (line, column) = (self.line, self.col);
        let mut name = String::new();
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(c) => return self.error(format!("expected a variable, found `{c}`")),
            None => return self.error("expected a variable, found end of input"),
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                name.push(c);
                self.bump();
            } else {
                break;
            }
        }
        let mut exp = 1u32;
        if self.peek() == Some('^') {
            self.bump();
            let mut digits = String::new();
            while let Some(c) = self.peek() {
                if c.is_ascii_digit() {
                    digits.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            if digits.is_empty() {
                return self.error("expected an exponent after `^`");
            }
            let value: u64 = digits.parse().map_err(|_| Error::ExponentTooLarge {
                value: u64::MAX,
                max: MAX_EXPONENT,
            })?;
            if value == 0 {
                return Err(Error::ZeroExponent { line, column, var: name });
            }
            if value > MAX_EXPONENT as u64 {
                return Err(Error::ExponentTooLarge { value, max: MAX_EXPONENT });
            }
            exp = value as u32;
        }
        Ok(Factor { name, exp })
    }
}
