//! Text syntax for polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' uint]
//! atom   := number ['/' number] | name | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies, so `1/3 x0^2 x1` and `1/3*x0^2*x1` agree.

use num_bigint::BigInt;
use num_traits::One;

use super::poly::{Polynomial, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    tok: Tok,
    col: usize,
    text: String,
}

fn lex(src: &str) -> Result<Vec<Lexed>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let after_caret = matches!(out.last(), Some(Lexed { tok: Tok::Caret, .. }));
            let glued = i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_');
            if i < chars.len() && (chars[i] == '.' || (after_caret && glued)) {
                let mut j = i;
                while j < chars.len() && !chars[j].is_whitespace() && !"+-*/^()".contains(chars[j]) {
                    j += 1;
                }
                let token: String = chars[start..j].iter().collect();
                let message = if after_caret { "malformed exponent" } else { "malformed number" };
                return Err(Error::Parse {
                    column: col,
                    token,
                    message: message.into(),
                });
            }
            let n = text.parse::<BigInt>().expect("digits parse");
            out.push(Lexed { tok: Tok::Num(n), col, text });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Lexed { tok: Tok::Name(text.clone()), col, text });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(Error::Parse {
                    column: col,
                    token: c.to_string(),
                    message: "unexpected character".into(),
                })
            }
        };
        out.push(Lexed { tok, col, text: c.to_string() });
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Lexed>,
    pos: usize,
    names: &'a [String],
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        let (column, token) = match self.toks.get(self.pos) {
            Some(l) => (l.col, l.text.clone()),
            None => (self.end_col, "<end>".to_string()),
        };
        Err(Error::Parse {
            column,
            token,
            message: message.into(),
        })
    }

    fn ambient(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ambient());
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Num(_)) | Some(Tok::Name(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Num(n)) => {
                    let k: u32 = match n.try_into() {
                        Ok(k) => k,
                        Err(_) => return self.err("exponent too large"),
                    };
                    self.pos += 1;
                    return Ok(base.pow(k));
                }
                _ => return self.err("malformed exponent: expected a non-negative integer"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let m = self.ambient();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut d = BigInt::one();
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek() {
                        Some(Tok::Num(v)) if *v != BigInt::from(0) => {
                            d = v.clone();
                            self.pos += 1;
                        }
                        _ => return self.err("expected a nonzero denominator"),
                    }
                }
                Ok(Polynomial::constant(m, Rational::new(n, d)))
            }
            Some(Tok::Name(name)) => match self.names.iter().position(|v| *v == name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Polynomial::var(m, i))
                }
                None => self.err("unknown variable"),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            _ => self.err("expected a number, variable or `(`"),
        }
    }
}

impl Polynomial {
    /// Parses `text` in the ring whose variables are `names`.
    ///
    /// ```
    /// use foliation::{Polynomial, ratio};
    /// let names = ["x0", "x1"].map(String::from);
    /// let p = Polynomial::parse("1/3 x0^2 x1 - x1", &names).unwrap();
    /// assert_eq!(p.num_terms(), 2);
    /// assert_eq!(p.leading().unwrap().1, &ratio(1, 3));
    /// ```
    pub fn parse(text: &str, names: &[String]) -> Result<Polynomial> {
        let toks = lex(text)?;
        let mut p = Parser {
            toks,
            pos: 0,
            names,
            end_col: text.chars().count() + 1,
        };
        if p.toks.is_empty() {
            return p.err("empty polynomial");
        }
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return p.err("unexpected token");
        }
        Ok(out)
    }
}
