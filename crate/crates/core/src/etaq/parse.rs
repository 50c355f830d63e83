//! Text grammar for eta expressions (ASCII, whitespace insignificant):
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor | '/' factor)*
//! factor := INT | 'q' ['^' INT] | 'f' INT ['^' SINT] | '(' expr ')'
//! SINT   := ['-'] INT
//! ```
//!
//! Products distribute over parenthesized sums, so the parsed value is always
//! a flat list of terms. A divisor must be a single product of `f` factors,
//! optionally negated.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use super::{EtaExpression, EtaTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {}", .expected.join(", "))]
    Syntax { offset: usize, expected: Vec<&'static str> },
    #[error("zero scale f0 at offset {offset}")]
    ZeroScale { offset: usize },
    #[error("divisor at offset {offset} is not invertible (only products of f-factors may divide)")]
    NonInvertibleDivisor { offset: usize },
    #[error("number at offset {offset} is out of range")]
    NumberOutOfRange { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::ZeroScale { offset }
            | ParseError::NonInvertibleDivisor { offset }
            | ParseError::NumberOutOfRange { offset } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Q,
    F,
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
    LParen,
    RParen,
    Invalid,
    End,
}

fn lex(text: &str) -> Vec<(Tok, usize)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let value = text[start..i].parse::<BigInt>().expect("ascii digits");
            out.push((Tok::Int(value), start));
            continue;
        }
        let tok = match c {
            b'q' => Tok::Q,
            b'f' => Tok::F,
            b'^' => Tok::Caret,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => Tok::Invalid,
        };
        out.push((tok, i));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    out
}

const FACTOR_START: &[&str] = &["integer", "'q'", "'f'", "'('"];

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&'static str]) -> Result<T, ParseError> {
        Err(ParseError::Syntax { offset: self.offset(), expected: expected.to_vec() })
    }

    fn int(&mut self) -> Result<(BigInt, usize), ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                let at = self.offset();
                self.bump();
                Ok((v, at))
            }
            _ => self.fail(&["integer"]),
        }
    }

    fn small_int<T: TryFrom<BigInt>>(&mut self) -> Result<T, ParseError> {
        let (v, at) = self.int()?;
        T::try_from(v).map_err(|_| ParseError::NumberOutOfRange { offset: at })
    }

    fn expr(&mut self) -> Result<Vec<EtaTerm>, ParseError> {
        let negate_first = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut terms = self.term()?;
        if negate_first {
            negate(&mut terms);
        }
        loop {
            let negative = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(terms),
            };
            self.bump();
            let mut next = self.term()?;
            if negative {
                negate(&mut next);
            }
            terms.extend(next);
        }
    }

    fn term(&mut self) -> Result<Vec<EtaTerm>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = distribute(&acc, &rhs);
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.factor()?;
                    let divisor = match rhs.as_slice() {
                        [t] if t.q_shift == 0 && t.coefficient.abs().is_one() => t,
                        _ => return Err(ParseError::NonInvertibleDivisor { offset: at }),
                    };
                    let mut reciprocal = EtaTerm::new(divisor.coefficient.clone(), 0);
                    for (&k, &e) in divisor.factors() {
                        reciprocal.mul_factor(k, -e);
                    }
                    acc = distribute(&acc, &[reciprocal]);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Vec<EtaTerm>, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(vec![EtaTerm::new(v, 0)])
            }
            Tok::Q => {
                self.bump();
                let shift = if *self.peek() == Tok::Caret {
                    self.bump();
                    self.small_int::<usize>()?
                } else {
                    1
                };
                Ok(vec![EtaTerm::new(1, shift)])
            }
            Tok::F => {
                self.bump();
                let at = self.offset();
                let scale = self.small_int::<usize>()?;
                if scale == 0 {
                    return Err(ParseError::ZeroScale { offset: at });
                }
                let exponent = if *self.peek() == Tok::Caret {
                    self.bump();
                    let negative = if *self.peek() == Tok::Minus {
                        self.bump();
                        true
                    } else {
                        false
                    };
                    if !matches!(self.peek(), Tok::Int(_)) {
                        return self.fail(if negative { &["integer"] } else { &["'-'", "integer"] });
                    }
                    let e: i64 = self.small_int()?;
                    if negative {
                        -e
                    } else {
                        e
                    }
                } else {
                    1
                };
                Ok(vec![EtaTerm::new(1, 0).with_factor(scale, exponent)])
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.fail(&["'+'", "'-'", "'*'", "'/'", "')'"]);
                }
                self.bump();
                Ok(inner)
            }
            _ => self.fail(FACTOR_START),
        }
    }
}

fn negate(terms: &mut [EtaTerm]) {
    for t in terms {
        t.coefficient = -std::mem::take(&mut t.coefficient);
    }
}

fn distribute(lhs: &[EtaTerm], rhs: &[EtaTerm]) -> Vec<EtaTerm> {
    lhs.iter().flat_map(|a| rhs.iter().map(move |b| a.times(b))).collect()
}

/// Parses an eta expression; see the module docs for the grammar.
pub fn parse_eta(text: &str) -> Result<EtaExpression, ParseError> {
    let mut p = Parser { toks: lex(text), pos: 0 };
    let terms = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(&["'+'", "'-'", "'*'", "'/'", "end of input"]);
    }
    Ok(EtaExpression::new(terms))
}

impl std::str::FromStr for EtaExpression {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_eta(s)
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, k: usize, e: i64) -> fmt::Result {
    match e {
        1 => write!(f, "f{k}"),
        _ => write!(f, "f{k}^{e}"),
    }
}

fn write_term_body(f: &mut fmt::Formatter<'_>, t: &EtaTerm) -> fmt::Result {
    let mag = t.coefficient.abs();
    let numer: Vec<(usize, i64)> = t.factors().iter().filter(|(_, &e)| e > 0).map(|(&k, &e)| (k, e)).collect();
    let denom: Vec<(usize, i64)> = t.factors().iter().filter(|(_, &e)| e < 0).map(|(&k, &e)| (k, -e)).collect();
    let mut wrote = false;
    let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
        if wrote {
            f.write_str("*")?;
        }
        wrote = true;
        Ok(())
    };
    if !mag.is_one() || (t.q_shift == 0 && numer.is_empty()) {
        sep(f)?;
        write!(f, "{mag}")?;
    }
    if t.q_shift > 0 {
        sep(f)?;
        match t.q_shift {
            1 => f.write_str("q")?,
            s => write!(f, "q^{s}")?,
        }
    }
    for &(k, e) in &numer {
        sep(f)?;
        write_factor(f, k, e)?;
    }
    if !denom.is_empty() {
        f.write_str("/")?;
        let grouped = denom.len() > 1;
        if grouped {
            f.write_str("(")?;
        }
        for (i, &(k, e)) in denom.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write_factor(f, k, e)?;
        }
        if grouped {
            f.write_str(")")?;
        }
    }
    Ok(())
}

impl fmt::Display for EtaExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms().iter().enumerate() {
            let negative = t.coefficient.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_term_body(f, t)?;
        }
        Ok(())
    }
}

impl fmt::Display for EtaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficient.is_negative() {
            f.write_str("-")?;
        }
        write_term_body(f, self)
    }
}
