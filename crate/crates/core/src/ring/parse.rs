//! Recursive-descent parser for the element grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' posint]
//! atom   := int ['/' posint] | ident | '(' expr ')'
//! ```
//! Whitespace between tokens is ignored. The result is a sparse polynomial
//! with rational coefficients over abstract variable indices supplied by the
//! caller's resolver.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Sorted list of (variable index, exponent).
pub type RawMono = Vec<(usize, u32)>;
pub type RawPoly = BTreeMap<RawMono, BigRational>;

struct Parser<'a, 'r> {
    chars: Vec<char>,
    pos: usize,
    resolve: &'r dyn Fn(&str) -> Option<usize>,
    _src: &'a str,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::SyntaxError { pos, msg: msg.into() }
}

fn raw_add(a: &mut RawPoly, b: RawPoly) {
    for (m, c) in b {
        let e = a.entry(m).or_insert_with(BigRational::zero);
        *e += c;
    }
    a.retain(|_, c| !c.is_zero());
}

fn raw_mul(a: &RawPoly, b: &RawPoly) -> RawPoly {
    let mut out = RawPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m: BTreeMap<usize, u32> = ma.iter().cloned().collect();
            for (v, e) in mb {
                *m.entry(*v).or_insert(0) += e;
            }
            let key: RawMono = m.into_iter().collect();
            let e = out.entry(key).or_insert_with(BigRational::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn constant(c: BigRational) -> RawPoly {
    let mut p = RawPoly::new();
    if !c.is_zero() {
        p.insert(Vec::new(), c);
    }
    p
}

impl<'a, 'r> Parser<'a, 'r> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse::<BigInt>().expect("digits"))
    }

    fn expr(&mut self) -> Result<RawPoly> {
        let mut acc = RawPoly::new();
        let mut sign = BigRational::one();
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            raw_add(&mut acc, raw_mul(&t, &constant(sign.clone())));
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = BigRational::one();
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -BigRational::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RawPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = raw_mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RawPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let at = self.pos;
            let e = self.digits()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| err(at, "exponent too large"))?;
            if e == 0 {
                return Err(err(at, "exponent must be positive"));
            }
            let mut out = constant(BigRational::one());
            for _ in 0..e {
                out = raw_mul(&out, &base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RawPoly> {
        match self.peek() {
            None => Err(err(self.pos, "unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(err(self.pos, "expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.digits()?;
                    if d.is_zero() {
                        return Err(err(at, "zero denominator"));
                    }
                    return Ok(constant(BigRational::new(n, d)));
                }
                Ok(constant(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let idx = (self.resolve)(&name).ok_or(Error::UnknownVariable(name))?;
                let mut p = RawPoly::new();
                p.insert(vec![(idx, 1)], BigRational::one());
                Ok(p)
            }
            Some(c) => Err(err(self.pos, format!("unexpected character `{c}`"))),
        }
    }
}

/// Parses `src`, resolving identifiers through `resolve`.
pub fn parse_raw(src: &str, resolve: &dyn Fn(&str) -> Option<usize>) -> Result<RawPoly> {
    let mut p = Parser { chars: src.chars().collect(), pos: 0, resolve, _src: src };
    if p.peek().is_none() {
        return Err(err(0, "empty expression"));
    }
    let out = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(err(p.pos, format!("unexpected character `{c}`")));
    }
    Ok(out)
}
