use num_bigint::BigInt;
use std::sync::Arc;

use super::{Monomial, PolyError, Polynomial, Rational, VarTable};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
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

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let mut first = true;
        while let Some(c) = self.peek() {
            let ok = if first {
                c.is_ascii_alphabetic() || c == '_'
            } else {
                c.is_ascii_alphanumeric() || c == '_' || c == '\''
            };
            if !ok {
                break;
            }
            first = false;
            self.pos += c.len_utf8();
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn factor(&mut self, vars: &Arc<VarTable>, t: &mut Term) -> Result<(), PolyError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let g = self.expr(vars)?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                let e = self.exponent()?;
                t.groups.push(g.pow(e));
                Ok(())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut r = Rational::from_bigint(n);
                if self.eat('/') {
                    let at = self.pos;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        self.pos = at;
                        return Err(self.err("zero denominator"));
                    }
                    r = &r / &Rational::from_bigint(d);
                }
                t.coef *= &r;
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let at = self.pos;
                let name = self.ident().expect("identifier start");
                let idx = vars
                    .index_of(name)
                    .ok_or(PolyError::Parse { pos: at, msg: format!("unknown variable `{name}`") })?;
                let e = self.exponent()?;
                t.mono.push((idx, e));
                Ok(())
            }
            Some(_) => Err(self.err("expected number or variable")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn exponent(&mut self) -> Result<u32, PolyError> {
        if !self.eat('^') {
            return Ok(1);
        }
        self.skip_ws();
        let at = self.pos;
        let n = self.integer()?;
        u32::try_from(n)
            .ok()
            .filter(|e| *e < 1 << 16)
            .ok_or(PolyError::Parse { pos: at, msg: "exponent out of range".into() })
    }

    fn term(&mut self, vars: &Arc<VarTable>) -> Result<Term, PolyError> {
        let mut t = Term { coef: Rational::one(), mono: Vec::new(), groups: Vec::new() };
        self.factor(vars, &mut t)?;
        while self.eat('*') {
            self.factor(vars, &mut t)?;
        }
        Ok(t)
    }

    fn expr(&mut self, vars: &Arc<VarTable>) -> Result<Polynomial, PolyError> {
        let mut plain = Vec::new();
        let mut grouped = Polynomial::zero(vars);
        let mut neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.term(vars)?;
            let c = if neg { -t.coef } else { t.coef };
            let m = Monomial::from_pairs(t.mono);
            if t.groups.is_empty() {
                plain.push((m, c));
            } else {
                let mut p = Polynomial::from_terms(vars, vec![(m, c)]);
                for g in &t.groups {
                    p = &p * g;
                }
                grouped = &grouped + &p;
            }
            self.skip_ws();
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(&Polynomial::from_terms(vars, plain) + &grouped)
    }
}

struct Term {
    coef: Rational,
    mono: Vec<(usize, u32)>,
    groups: Vec<Polynomial>,
}

/// Parses text such as `-2*s1^2 + 3/4*(s2 - s1^2)^2` against a variable table.
pub fn parse_polynomial(text: &str, vars: &Arc<VarTable>) -> Result<Polynomial, PolyError> {
    let mut p = Parser { src: text, pos: 0 };
    let out = p.expr(vars)?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(out)
}

impl Polynomial {
    pub fn parse(text: &str, vars: &Arc<VarTable>) -> Result<Self, PolyError> {
        parse_polynomial(text, vars)
    }
}
