//! Polynomial expressions over `t`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' uint)?
//! atom   := int | 't' | '(' expr ')'
//! ```
//!
//! `coeffs:c0,c1,...,cn` (lowest degree first) is accepted as well.

use std::fmt;

use num_bigint::BigInt;
use pmaximal::intpoly::IntPoly;
use thiserror::Error;

/// Exponents above this are rejected rather than expanded.
pub const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at column {column}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Int(BigInt),
    Var,
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
    /// The `coeffs:` form.
    Coeffs(Vec<BigInt>),
}

impl PolyExpr {
    pub fn eval(&self) -> IntPoly {
        match self {
            PolyExpr::Int(c) => IntPoly::constant(c.clone()),
            PolyExpr::Var => IntPoly::t(),
            PolyExpr::Neg(a) => -a.eval(),
            PolyExpr::Add(a, b) => a.eval() + b.eval(),
            PolyExpr::Sub(a, b) => a.eval() - b.eval(),
            PolyExpr::Mul(a, b) => a.eval() * b.eval(),
            PolyExpr::Pow(a, e) => a.eval().pow(*e),
            PolyExpr::Coeffs(c) => IntPoly::from_coeffs(c.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    T,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::T => f.write_str("'t'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

const ATOM_START: [&str; 4] = ["integer", "'t'", "'('", "'-'"];

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((col, Tok::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            't' => Tok::T,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ParseError {
                    column: col,
                    expected: vec!["integer", "'t'", "operator", "parenthesis"],
                    found: format!("'{other}'"),
                })
            }
        };
        out.push((col, tok));
        i += 1;
    }
    out.push((chars.len() + 1, Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let (column, tok) = &self.toks[self.pos];
        ParseError {
            column: *column,
            expected: expected.to_vec(),
            found: tok.to_string(),
        }
    }

    fn expr(&mut self) -> Result<PolyExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<PolyExpr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(PolyExpr::Neg(Box::new(self.factor()?)));
        }
        let atom = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(atom);
        }
        self.bump();
        let exp_err = self.error(&["non-negative integer exponent"]);
        match self.bump().1 {
            Tok::Int(e) => match u32::try_from(&e).ok().filter(|&e| e <= MAX_EXPONENT) {
                Some(e) => Ok(PolyExpr::Pow(Box::new(atom), e)),
                None => Err(ParseError {
                    expected: vec!["exponent at most 65536"],
                    ..exp_err
                }),
            },
            _ => Err(exp_err),
        }
    }

    fn atom(&mut self) -> Result<PolyExpr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(PolyExpr::Int(n))
            }
            Tok::T => {
                self.bump();
                Ok(PolyExpr::Var)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["')'", "'+'", "'-'", "'*'", "'^'"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(&ATOM_START)),
        }
    }
}

const COEFFS_PREFIX: &str = "coeffs:";

fn parse_coeffs(src: &str) -> Result<PolyExpr, ParseError> {
    let offset = COEFFS_PREFIX.chars().count();
    let mut coeffs = Vec::new();
    let mut col = offset + 1;
    for piece in src[COEFFS_PREFIX.len()..].split(',') {
        let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
        let trimmed = piece.trim();
        let value = trimmed.parse::<BigInt>().map_err(|_| ParseError {
            column: col + lead,
            expected: vec!["integer coefficient"],
            found: if trimmed.is_empty() {
                "nothing".into()
            } else {
                format!("'{trimmed}'")
            },
        })?;
        coeffs.push(value);
        col += piece.chars().count() + 1;
    }
    Ok(PolyExpr::Coeffs(coeffs))
}

pub fn parse_expr(src: &str) -> Result<PolyExpr, ParseError> {
    if src.trim_start().starts_with(COEFFS_PREFIX) {
        let lead = src.len() - src.trim_start().len();
        return parse_coeffs(&src[lead..]).map_err(|e| ParseError {
            column: e.column + src[..lead].chars().count(),
            ..e
        });
    }
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(e)
}

pub fn parse_poly(src: &str) -> Result<IntPoly, ParseError> {
    parse_expr(src).map(|e| e.eval())
}
