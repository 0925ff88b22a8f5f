//! Text syntax for polynomials, cochains and classes.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := unary (('*' | '^' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('**' integer)?
//! atom   := integer | x | y | z | dx | dy | dz | '(' expr ')'
//! class  := H0{expr} | H1{expr; expr} | H2{expr} | H3{expr}
//! ```
//!
//! `*` and `^` both denote the wedge product, which is ordinary
//! multiplication on functions. A divisor must be a nonzero constant.
//! Juxtaposition is not multiplication.
//!
//! Printing is canonical: blades in basis order, monomials graded
//! lexicographic with `x > y > z`, coefficients as `num/den`.

use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::cohomology::CohClass;
use crate::error::{Error, ParseError};
use crate::poly::{Monomial, Poly, Rational, Var};
use crate::polyvector::{Blade, PolyVector};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    StarStar,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semi,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::StarStar => f.write_str("'**'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBrace => f.write_str("'{'"),
            Tok::RBrace => f.write_str("'}'"),
            Tok::Semi => f.write_str("';'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l, cl) = (line, col);
        let mut push = |tok: Tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Token {
                tok,
                line: l,
                column: cl,
            });
            *i += len;
            *col += len;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Token {
                    tok: Tok::Num(text.parse().expect("digits")),
                    line: l,
                    column: cl,
                });
                col += i - start;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line: l,
                    column: cl,
                });
                col += i - start;
            }
            '*' if chars.get(i + 1) == Some(&'*') => push(Tok::StarStar, 2, &mut i, &mut col),
            '*' => push(Tok::Star, 1, &mut i, &mut col),
            '+' => push(Tok::Plus, 1, &mut i, &mut col),
            '-' => push(Tok::Minus, 1, &mut i, &mut col),
            '/' => push(Tok::Slash, 1, &mut i, &mut col),
            '^' => push(Tok::Caret, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '{' => push(Tok::LBrace, 1, &mut i, &mut col),
            '}' => push(Tok::RBrace, 1, &mut i, &mut col),
            ';' => push(Tok::Semi, 1, &mut i, &mut col),
            other => {
                return Err(ParseError {
                    line,
                    column: col,
                    expected: vec!["expression".into()],
                    found: format!("'{other}'"),
                })
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

const ATOM_START: [&str; 8] = ["number", "x", "y", "z", "dx", "dy", "dz", "'('"];

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, expected: &[&str]) -> ParseError {
        ParseError {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error_at(self.peek(), &[name]))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek().tok {
            Tok::Eof => Ok(()),
            _ => Err(self.error_at(self.peek(), &["operator", "end of input"])),
        }
    }

    fn expr(&mut self) -> Result<PolyVector, ParseError> {
        let mut acc = match self.peek().tok {
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyVector, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star | Tok::Caret => {
                    self.bump();
                    acc = acc.wedge(&self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.peek().clone();
                    let d = self.unary()?;
                    match constant_of(&d) {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        _ => return Err(self.error_at(&at, &["nonzero constant divisor"])),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<PolyVector, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolyVector, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::StarStar {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        let n: u32 = match &t.tok {
            Tok::Num(n) => n
                .try_into()
                .map_err(|_| self.error_at(&t, &["small exponent"]))?,
            _ => return Err(self.error_at(&t, &["integer exponent"])),
        };
        let mut acc = PolyVector::scalar(Poly::one());
        for _ in 0..n {
            acc = acc.wedge(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<PolyVector, ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Num(n) => Ok(PolyVector::scalar(Poly::constant(Rational::from_integer(
                n.clone(),
            )))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(s) => match s.as_str() {
                "x" => Ok(PolyVector::scalar(Poly::x())),
                "y" => Ok(PolyVector::scalar(Poly::y())),
                "z" => Ok(PolyVector::scalar(Poly::z())),
                "dx" => Ok(PolyVector::from_blade(Blade::Dx, Poly::one())),
                "dy" => Ok(PolyVector::from_blade(Blade::Dy, Poly::one())),
                "dz" => Ok(PolyVector::from_blade(Blade::Dz, Poly::one())),
                _ => Err(self.error_at(&t, &ATOM_START)),
            },
            _ => Err(self.error_at(&t, &ATOM_START)),
        }
    }

    fn function(&mut self) -> Result<Poly, ParseError> {
        let at = self.peek().clone();
        let e = self.expr()?;
        match e.degree("parse") {
            Ok(None) => Ok(Poly::zero()),
            Ok(Some(0)) => Ok(e.component(Blade::One)),
            _ => Err(ParseError {
                line: at.line,
                column: at.column,
                expected: vec!["polynomial without blades".into()],
                found: e.to_string(),
            }),
        }
    }

    fn class(&mut self) -> Result<CohClass, Error> {
        let t = self.bump();
        let tag = match &t.tok {
            Tok::Ident(s) if matches!(s.as_str(), "H0" | "H1" | "H2" | "H3") => s.clone(),
            _ => return Err(self.error_at(&t, &["H0", "H1", "H2", "H3"]).into()),
        };
        self.expect(Tok::LBrace, "'{'")?;
        let first = self.function()?;
        let class = match tag.as_str() {
            "H0" => CohClass::H0 { psi: first },
            "H1" => {
                self.expect(Tok::Semi, "';'")?;
                let psi = self.function()?;
                CohClass::H1 { g0: first, psi }
            }
            "H2" => CohClass::H2 { g: first },
            _ => CohClass::H3 { p: first },
        };
        self.expect(Tok::RBrace, "'}'")?;
        self.finish()?;
        class.normalized()
    }
}

fn constant_of(u: &PolyVector) -> Option<Rational> {
    match u.degree("parse").ok()? {
        None => Some(Rational::zero()),
        Some(0) => u.component(Blade::One).as_constant(),
        Some(_) => None,
    }
}

pub fn parse_pv(src: &str) -> Result<PolyVector, ParseError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_poly(src: &str) -> Result<Poly, ParseError> {
    let mut p = Parser::new(src)?;
    let f = p.function()?;
    p.finish()?;
    Ok(f)
}

/// Parses a class literal; payloads are checked against the class invariants.
pub fn parse_class(src: &str) -> Result<CohClass, Error> {
    Parser::new(src)?.class()
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: Monomial) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(v.name())?;
        if e > 1 {
            write!(f, "**{e}")?;
        }
    }
    Ok(())
}

/// Writes the terms of `p` times `blade`, continuing after `lead` terms.
fn write_terms(f: &mut fmt::Formatter<'_>, p: &Poly, blade: Blade, lead: &mut bool) -> fmt::Result {
    for (m, c) in p.sorted_terms() {
        match (*lead, c.is_negative()) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        *lead = false;
        let abs = c.abs();
        let unit = m == Monomial::ONE && blade == Blade::One;
        let mut factors = 0;
        if !abs.is_one() || unit {
            write!(f, "{abs}")?;
            factors += 1;
        }
        if m != Monomial::ONE {
            if factors > 0 {
                f.write_str("*")?;
            }
            write_monomial(f, m)?;
            factors += 1;
        }
        if blade != Blade::One {
            if factors > 0 {
                f.write_str("*")?;
            }
            f.write_str(blade.name())?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write_terms(f, self, Blade::One, &mut true)
    }
}

impl fmt::Display for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut lead = true;
        for (b, p) in self.components() {
            write_terms(f, p, b, &mut lead)?;
        }
        Ok(())
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohClass::H0 { psi } => write!(f, "H0{{{psi}}}"),
            CohClass::H1 { g0, psi } => write!(f, "H1{{{g0}; {psi}}}"),
            CohClass::H2 { g } => write!(f, "H2{{{g}}}"),
            CohClass::H3 { p } => write!(f, "H3{{{p}}}"),
        }
    }
}
