//! Recursive-descent parser for the polynomial input grammar:
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | identifier | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! Implicit multiplication is not allowed; whitespace is insignificant.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::{Polynomial, Ring};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Int(BigInt),
    Ident(String),
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        while lx.pos < lx.src.len() {
            let start = lx.pos;
            let c = lx.src[lx.pos];
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    lx.pos += 1;
                    continue;
                }
                b'+' => out.push((start, Tok::Plus)),
                b'-' => out.push((start, Tok::Minus)),
                b'*' => out.push((start, Tok::Star)),
                b'^' => out.push((start, Tok::Caret)),
                b'/' => out.push((start, Tok::Slash)),
                b'(' => out.push((start, Tok::LParen)),
                b')' => out.push((start, Tok::RParen)),
                b'0'..=b'9' => {
                    let mut end = lx.pos;
                    while end < lx.src.len() && lx.src[end].is_ascii_digit() {
                        end += 1;
                    }
                    let digits = std::str::from_utf8(&lx.src[lx.pos..end]).unwrap();
                    out.push((start, Tok::Int(digits.parse().unwrap())));
                    lx.pos = end;
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let mut end = lx.pos;
                    while end < lx.src.len()
                        && (lx.src[end].is_ascii_alphanumeric() || lx.src[end] == b'_')
                    {
                        end += 1;
                    }
                    let name = std::str::from_utf8(&lx.src[lx.pos..end]).unwrap();
                    out.push((start, Tok::Ident(name.to_string())));
                    lx.pos = end;
                    continue;
                }
                other => {
                    return Err(ParseError::Syntax {
                        pos: start,
                        msg: format!("unexpected character `{}`", other as char),
                    })
                }
            }
            lx.pos += 1;
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
    ring: Arc<Ring>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            match self.bump() {
                Some(Tok::Int(e)) => {
                    let e: u32 = e.try_into().map_err(|_| ParseError::Syntax {
                        pos: self.pos(),
                        msg: "exponent too large".to_string(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => {
                    self.idx -= 1;
                    self.err("expected non-negative integer exponent after `^`")
                }
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(num)) => {
                let mut value = BigRational::from_integer(num);
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(den)) => {
                            if den.is_zero() {
                                return Err(ParseError::Syntax {
                                    pos: self.pos(),
                                    msg: "zero denominator".to_string(),
                                });
                            }
                            value /= BigRational::from_integer(den);
                        }
                        _ => {
                            self.idx -= 1;
                            return self.err("expected integer denominator after `/`");
                        }
                    }
                }
                Ok(Polynomial::constant(&self.ring, value))
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => Ok(Polynomial::var(&self.ring, i)),
                None => Err(ParseError::UnknownVariable { pos, name }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.idx -= 1;
                        self.err("expected `)`")
                    }
                }
            }
            Some(Tok::Minus) => {
                // a negative rational literal inside a term, e.g. `(-1)` or `2*-3` is
                // not in the grammar, but `(-1/2)` arises from printing; allow a
                // leading minus directly before a numeric literal
                match self.bump() {
                    Some(Tok::Int(num)) => {
                        self.idx -= 1;
                        self.toks[self.idx].1 = Tok::Int(-num);
                        self.base()
                    }
                    _ => {
                        self.idx -= 1;
                        self.err("expected rational, identifier or `(`")
                    }
                }
            }
            _ => {
                self.idx -= 1;
                self.err("expected rational, identifier or `(`")
            }
        }
    }
}

/// Parses `text` over the ring with the given ordered variable names.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial, ParseError> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser {
        toks,
        idx: 0,
        end: text.len(),
        ring: ring.clone(),
    };
    let poly = p.expr()?;
    if p.idx != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::super::{MonomialOrder, Polynomial, Ring};
    use super::*;

    #[test]
    fn parses_sphere() {
        let ring = Ring::new(vec!["x", "y", "z"]);
        let p = parse_polynomial("x^2+y^2+z^2", &ring).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert!(p.terms().all(|(_, c)| *c == num_rational::BigRational::from_integer(1.into())));
    }

    #[test]
    fn parses_zero() {
        let ring = Ring::new(vec!["x"]);
        let p = parse_polynomial("0", &ring).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn expands_products() {
        let ring = Ring::new(vec!["x"]);
        let p = parse_polynomial("2*x*(x-1) - 2*x^2", &ring).unwrap();
        let expected = Polynomial::var(&ring, 0).scalar_mul(&(-num_rational::BigRational::from_integer(2.into())));
        assert_eq!(p, expected);
    }

    #[test]
    fn rational_coefficients() {
        let ring = Ring::new(vec!["x"]);
        let p = parse_polynomial("1/2*x + 3/4", &ring).unwrap();
        assert_eq!(p.to_string(), "1/2*x + 3/4");
    }

    #[test]
    fn rejects_unknown_variable() {
        let ring = Ring::new(vec!["x"]);
        let err = parse_polynomial("x + w", &ring).unwrap_err();
        assert!(matches!(err, ParseError::UnknownVariable { name, .. } if name == "w"));
    }

    #[test]
    fn rejects_garbage_with_position() {
        let ring = Ring::new(vec!["x"]);
        let err = parse_polynomial("x + ?", &ring).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { pos: 4, .. }));
        let err = parse_polynomial("x^(2)", &ring).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }));
    }

    #[test]
    fn print_parse_roundtrip() {
        let ring = Ring::new(vec!["x", "y"]);
        let p = parse_polynomial("3*x^2*y - 1/3*y^2 + x - 7", &ring).unwrap();
        let reparsed = parse_polynomial(&p.to_string(), &ring).unwrap();
        assert_eq!(p, reparsed);
        assert!(p.leading_monomial(MonomialOrder::DegRevLex).is_some());
    }
}
