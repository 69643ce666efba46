//! Plain-text polynomial format: `1*w^2 - 1*c^2*k^2`.

use std::cmp::Ordering;

use num::{One, Signed, Zero};

use super::error::PolyError;
use super::multipoly::MultiPoly;
use super::rational::{format_rational, parse_rational, Rational};

/// Term order used for rendering: the alphabetically last variable is the most
/// significant, higher powers first.
fn term_cmp(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match y.cmp(x) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

pub fn render(p: &MultiPoly) -> String {
    let mut terms: Vec<(&[u32], &Rational)> = p.terms().collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.sort_by(|a, b| term_cmp(a.0, b.0));
    let vars = p.vars();
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&format_rational(&c.abs()));
        for (v, &x) in vars.iter().zip(e.iter()) {
            match x {
                0 => {}
                1 => {
                    out.push('*');
                    out.push_str(v);
                }
                _ => {
                    out.push('*');
                    out.push_str(v);
                    out.push('^');
                    out.push_str(&x.to_string());
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push((start + 1, Tok::Num(chars[start..i].iter().collect())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start + 1, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i + 1, Tok::Op(c)));
            i += 1;
        } else {
            return Err(PolyError::Parse {
                col: i + 1,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            col: self.col(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Op('+')) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Tok::Op('-')) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.factor()?;
                    match d.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&(Rational::one() / c)),
                        _ => {
                            return Err(PolyError::Parse {
                                col,
                                msg: "divisor must be a nonzero number".into(),
                            })
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let e: u32 = match n.parse() {
                        Ok(e) => e,
                        Err(_) => return self.err("exponent must be a non-negative integer"),
                    };
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return self.err("exponent must be a non-negative integer"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                let col = self.col();
                self.pos += 1;
                let r = parse_rational(&n).map_err(|_| PolyError::Parse {
                    col,
                    msg: format!("bad number {n:?}"),
                })?;
                Ok(MultiPoly::constant(r))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(MultiPoly::var(&v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            _ => self.err("expected a number, variable or `(`"),
        }
    }
}

pub fn parse(s: &str) -> Result<MultiPoly, PolyError> {
    let toks = lex(s)?;
    let end = s.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, end };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rational::{int, rat};

    #[test]
    fn renders_in_term_order() {
        let p: MultiPoly = parse("w^2 - c^2*k^2").unwrap();
        assert_eq!(render(&p), "1*w^2 - 1*c^2*k^2");
        assert_eq!(render(&MultiPoly::zero()), "0");
        assert_eq!(render(&MultiPoly::constant(rat(-3, 4))), "-3/4");
    }

    #[test]
    fn parses_arithmetic() {
        let p = parse("(x+1)^2 - 2*x/4").unwrap();
        let x = MultiPoly::var("x");
        let q = &x * &x + x.scale(&rat(3, 2)) + MultiPoly::one();
        assert_eq!(p, q);
        assert_eq!(parse("-2^2").unwrap(), MultiPoly::constant(int(-4)));
    }

    #[test]
    fn parse_errors_have_columns() {
        match parse("x + $") {
            Err(PolyError::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse("x/y").is_err());
        assert!(parse("x^y").is_err());
        assert!(parse("(x").is_err());
        assert!(parse("").is_err());
    }
}
