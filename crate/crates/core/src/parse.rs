//! Parsing and canonical printing of Newton systems.
//!
//! Input is a single equation `y' = <expr>` (the `y' =` prefix is optional)
//! where `<expr>` is a polynomial in `x` and `y` with exact rational
//! literals — integers, fractions `a/b`, and terminating decimals
//! (`0.25` becomes `1/4`) — combined with `+ - * / ^` and parentheses.
//! Division is only allowed by nonzero constants, keeping every expression
//! polynomial. Errors carry the byte offset of the offending token.
//! [`print_system`] emits a canonical form with `parse(print(S)) = S`.

use crate::monodromy::NewtonSystem;
use crate::poly::RatPoly;
use crate::rational::{format_rat, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

/// Polynomial in `x` and `y`, stored as coefficients of powers of `y`.
#[derive(Debug, Clone, PartialEq)]
struct XYPoly {
    by_y: Vec<RatPoly>,
}

impl XYPoly {
    fn zero() -> Self {
        XYPoly { by_y: Vec::new() }
    }

    fn constant(c: Rat) -> Self {
        XYPoly { by_y: vec![RatPoly::constant(c)] }
    }

    fn x() -> Self {
        XYPoly { by_y: vec![RatPoly::monomial(Rat::one(), 1)] }
    }

    fn y() -> Self {
        XYPoly { by_y: vec![RatPoly::zero(), RatPoly::one()] }
    }

    fn trim(mut self) -> Self {
        while self.by_y.last().is_some_and(RatPoly::is_zero) {
            self.by_y.pop();
        }
        self
    }

    fn add(&self, rhs: &Self) -> Self {
        let len = self.by_y.len().max(rhs.by_y.len());
        let by_y = (0..len)
            .map(|i| {
                let a = self.by_y.get(i).cloned().unwrap_or_else(RatPoly::zero);
                let b = rhs.by_y.get(i).cloned().unwrap_or_else(RatPoly::zero);
                a.add(&b)
            })
            .collect();
        XYPoly { by_y }.trim()
    }

    fn neg(&self) -> Self {
        XYPoly { by_y: self.by_y.iter().map(RatPoly::neg).collect() }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.by_y.is_empty() || rhs.by_y.is_empty() {
            return XYPoly::zero();
        }
        let mut by_y = vec![RatPoly::zero(); self.by_y.len() + rhs.by_y.len() - 1];
        for (i, a) in self.by_y.iter().enumerate() {
            for (j, b) in rhs.by_y.iter().enumerate() {
                by_y[i + j] = by_y[i + j].add(&a.mul(b));
            }
        }
        XYPoly { by_y }.trim()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = XYPoly::constant(Rat::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The constant this polynomial equals, if it has no `x` or `y` part.
    fn as_constant(&self) -> Option<Rat> {
        match self.by_y.len() {
            0 => Some(Rat::zero()),
            1 if self.by_y[0].degree() == Some(0) => Some(self.by_y[0].coeff(0)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' | '−' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            'x' => {
                toks.push((i, Tok::X));
                i += 1;
            }
            'y' => {
                toks.push((i, Tok::Y));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let int_part = &text[start..i];
                let mut value = Rat::from_integer(
                    int_part.parse::<BigInt>().expect("digit run parses"),
                );
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    let fs = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == fs {
                        return Err(ParseError::new(fs, "expected digits after decimal point"));
                    }
                    let frac = &text[fs..i];
                    let num = frac.parse::<BigInt>().expect("digit run parses");
                    let den = BigInt::from(10).pow(frac.len() as u32);
                    value += Rat::new(num, den);
                }
                toks.push((start, Tok::Num(value)));
            }
            _ => {
                // Multi-byte check: '−' (U+2212) is handled above only if it
                // matched as a char; recompute for non-ASCII.
                let ch = text[i..].chars().next().expect("in-bounds char");
                if ch == '−' {
                    toks.push((i, Tok::Minus));
                    i += ch.len_utf8();
                } else {
                    return Err(ParseError::new(i, format!("unexpected character '{ch}'")));
                }
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<XYPoly, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<XYPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    let at = self.offset();
                    self.bump();
                    let rhs = self.factor()?;
                    let Some(c) = rhs.as_constant() else {
                        return Err(ParseError::new(at, "division only by constants"));
                    };
                    if c.is_zero() {
                        return Err(ParseError::new(at, "division by zero"));
                    }
                    acc = acc.mul(&XYPoly::constant(Rat::one() / c));
                }
                // Implicit multiplication: `2x`, `x y`, `3(x+y)`.
                Some(Tok::X | Tok::Y | Tok::Num(_) | Tok::LParen) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<XYPoly, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Some(Tok::Num(e)) if e.is_integer() && !e.numer().sign().eq(&num_bigint::Sign::Minus) => {
                    let e = u32::try_from(e.numer())
                        .map_err(|_| ParseError::new(at, "exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(ParseError::new(at, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<XYPoly, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(XYPoly::constant(v)),
            Some(Tok::X) => Ok(XYPoly::x()),
            Some(Tok::Y) => Ok(XYPoly::y()),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError::new(close, "expected ')'")),
                }
            }
            Some(_) => Err(ParseError::new(at, "expected a number, 'x', 'y', or '('")),
            None => Err(ParseError::new(at, "unexpected end of input")),
        }
    }
}

/// Parses an equation for the `y` derivative into a [`NewtonSystem`].
pub fn parse_system(text: &str) -> Result<NewtonSystem, ParseError> {
    // Strip an optional `y' =` prefix.
    let trimmed = text.trim_start();
    let prefix_len = text.len() - trimmed.len();
    let body_start;
    let body;
    if let Some(rest) = trimmed.strip_prefix("y'") {
        let rest2 = rest.trim_start();
        let Some(after_eq) = rest2.strip_prefix('=') else {
            return Err(ParseError::new(
                prefix_len + 2,
                "expected '=' after y'",
            ));
        };
        body_start = text.len() - after_eq.len();
        body = after_eq;
    } else {
        body_start = prefix_len;
        body = trimmed;
    }
    if body.trim().is_empty() {
        return Err(ParseError::new(body_start, "empty right-hand side"));
    }
    let toks = lex(body).map_err(|e| ParseError::new(body_start + e.offset, e.message))?;
    let mut parser = Parser { toks: &toks, pos: 0, end: body.len() };
    let poly = parser.expr().map_err(|e| ParseError::new(body_start + e.offset, e.message))?;
    if parser.pos != toks.len() {
        return Err(ParseError::new(
            body_start + parser.offset(),
            "unexpected trailing input",
        ));
    }
    Ok(NewtonSystem::new(poly.by_y))
}

fn format_term(c: &Rat, xdeg: usize, ydeg: usize, out: &mut String) {
    let mut parts: Vec<String> = Vec::new();
    let abs = if c < &Rat::zero() { -c } else { c.clone() };
    if !abs.is_one() || (xdeg == 0 && ydeg == 0) {
        parts.push(format_rat(&abs));
    }
    for (var, deg) in [("x", xdeg), ("y", ydeg)] {
        match deg {
            0 => {}
            1 => parts.push(var.to_string()),
            _ => parts.push(format!("{var}^{deg}")),
        }
    }
    out.push_str(&parts.join("*"));
}

/// Canonical expression form: terms by ascending `y` power, then ascending
/// `x` power, with explicit `*` and rational coefficients as `a/b`.
/// Satisfies `parse_system(print_system(s)) == s`.
pub fn print_system(s: &NewtonSystem) -> String {
    let mut out = String::from("y' = ");
    let mut first = true;
    for (ydeg, p) in s.polys().iter().enumerate() {
        for (xdeg, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c < &Rat::zero() {
                    out.push('-');
                }
                first = false;
            } else if c < &Rat::zero() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            format_term(c, xdeg, ydeg, &mut out);
        }
    }
    if first {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratq};

    #[test]
    fn worked_grammar_examples() {
        let s = parse_system("y' = -x - x^3*y^2").unwrap();
        assert_eq!((s.m(), s.n()), (2, 3));
        assert_eq!(s.poly(0), RatPoly::from_ints(&[0, -1]));
        assert_eq!(s.poly(1), RatPoly::zero());
        assert_eq!(s.poly(2), RatPoly::from_ints(&[0, 0, 0, -1]));

        let s = parse_system("y' = -x^3 + x*y").unwrap();
        assert_eq!(s.m(), 1);

        let s = parse_system("y' = -x + y^3").unwrap();
        assert_eq!(s.m(), 3);
    }

    #[test]
    fn literals_and_operators() {
        // Exact decimal conversion.
        let s = parse_system("0.25*x").unwrap();
        assert_eq!(s.poly(0), RatPoly::new(vec![rat(0), ratq(1, 4)]));
        // Fractions, nested parens, implicit multiplication, constant division.
        let s = parse_system("y' = (1/2)x(x - 2)^2 / 3").unwrap();
        // (1/6) x (x^2 - 4x + 4) = (2/3)x - (2/3)x^2 + (1/6)x^3
        assert_eq!(
            s.poly(0),
            RatPoly::new(vec![rat(0), ratq(2, 3), ratq(-2, 3), ratq(1, 6)])
        );
        // Double negation and unary plus.
        let s = parse_system("+ - -x").unwrap();
        assert_eq!(s.poly(0), RatPoly::from_ints(&[0, 1]));
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_system("y' = x + ").unwrap_err();
        assert_eq!(e.offset, 9, "end-of-input offset");
        let e = parse_system("y' = x + z").unwrap_err();
        assert_eq!(e.offset, 9);
        assert!(e.message.contains("unexpected character 'z'"));
        let e = parse_system("y' = x / y").unwrap_err();
        assert!(e.message.contains("division only by constants"));
        let e = parse_system("y' = x ^ y").unwrap_err();
        assert!(e.message.contains("exponent"));
        let e = parse_system("y' = (x").unwrap_err();
        assert!(e.message.contains("')'"));
        let e = parse_system("y'  x").unwrap_err();
        assert!(e.message.contains("'='"));
        let e = parse_system("y' = ").unwrap_err();
        assert!(e.message.contains("empty"));
    }

    #[test]
    fn print_parse_round_trip() {
        for text in [
            "y' = -x - x^3*y^2",
            "y' = -x^3 + x*y",
            "y' = 0",
            "y' = 1/2 - 3/4*x^2*y + y^5",
            "y' = -2*x",
        ] {
            let s = parse_system(text).unwrap();
            let printed = print_system(&s);
            let again = parse_system(&printed).unwrap();
            assert_eq!(s, again, "round trip through {printed:?}");
        }
        // Canonical output format itself.
        let s = parse_system("y' = y*x*0.5 - x - 1").unwrap();
        assert_eq!(print_system(&s), "y' = -1 - x + 1/2*x*y");
    }
}
