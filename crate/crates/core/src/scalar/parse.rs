//! Parser for the scalar grammar: integers, `e` (the primitive root),
//! parameter names, `^` with integer exponents, `* / + -` and parentheses.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let d: String = cs[st..i].iter().collect();
            out.push(Tok::Num(d.parse().unwrap()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}' in \"{s}\"")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    n: u32,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                acc = acc.div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.eat('^') {
            let paren = self.eat('(');
            let neg = self.eat('-');
            let Some(Tok::Num(k)) = self.peek().cloned() else {
                return Err(Error::Parse("expected integer exponent".into()));
            };
            self.pos += 1;
            if paren && !self.eat(')') {
                return Err(Error::Parse("expected ')' after exponent".into()));
            }
            let k: i64 = i64::try_from(k).map_err(|_| Error::Parse("exponent too large".into()))?;
            return base.pow(if neg { -k } else { k });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek().cloned() {
            Some(Tok::Num(k)) => {
                self.pos += 1;
                Ok(Scalar::from_bigrational(BigRational::from_integer(k)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "e" {
                    Ok(Scalar::root(self.n, 1))
                } else {
                    Ok(Scalar::var(&name))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("unbalanced parentheses".into()));
                }
                Ok(v)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

pub fn parse(s: &str, n: u32) -> Result<Scalar> {
    let mut p = Parser { toks: lex(s)?, pos: 0, n };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in \"{s}\"")));
    }
    Ok(v)
}
