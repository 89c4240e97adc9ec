//! Polynomial text syntax: `3*s^2*x*y^4 - (x + y)^2`.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```

use super::poly::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((i, Tok::Num(s)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    s.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((i, Tok::Ident(s)));
        } else if "+-*^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            chars.next();
        } else {
            return Err(Error::Parse {
                offset: i,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    lookup: &'a dyn Fn(&str) -> Option<Polynomial>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let k: u32 = match n.parse() {
                        Ok(k) => k,
                        Err(_) => return self.err("exponent too large"),
                    };
                    self.pos += 1;
                    Ok(base.pow(k))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let p = self.ring.characteristic() as u64;
                let v = n
                    .bytes()
                    .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(self.ring.constant(v as i64))
            }
            Some(Tok::Ident(name)) => {
                let at = self.offset();
                self.pos += 1;
                if let Some(i) = self.ring.var_index(&name) {
                    Ok(self.ring.var(i))
                } else if let Some(f) = (self.lookup)(&name) {
                    f.to_ring(self.ring).map_err(|_| Error::Parse {
                        offset: at,
                        message: format!("`{name}` belongs to another ring"),
                    })
                } else {
                    Err(Error::Parse {
                        offset: at,
                        message: format!("unknown identifier `{name}`"),
                    })
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub(crate) fn parse_polynomial(
    ring: &Ring,
    text: &str,
    lookup: &dyn Fn(&str) -> Option<Polynomial>,
) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        ring,
        toks,
        pos: 0,
        end: text.len(),
        lookup,
    };
    let f = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.err("trailing input");
    }
    Ok(f)
}
