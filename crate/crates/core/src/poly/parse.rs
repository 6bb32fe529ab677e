//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') ['-'] term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := base ('^' nonneg-int)?
//! base    := rational-literal | identifier | '(' expr ')'
//! rational-literal := int ('/' positive-int)?
//! ```

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Poly, RatFn, Rational, VarSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token {
                tok,
                line: l0,
                column: c0,
            });
            i += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            column += i - start;
            let value = digits.parse::<BigInt>().expect("digits parse");
            out.push(Token {
                tok: Tok::Int(value),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                column: c0,
            });
            continue;
        }
        return Err(Error::Syntax {
            line: l0,
            column: c0,
            message: format!("unexpected character `{c}`"),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a VarSet,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<RatFn> {
        let mut acc = self.signed_term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.signed_term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.signed_term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed_term(&mut self) -> Result<RatFn> {
        if *self.peek() == Tok::Minus {
            self.next();
            return Ok(-self.term()?);
        }
        self.term()
    }

    fn term(&mut self) -> Result<RatFn> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.next();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    self.next();
                    let divisor = self.factor()?;
                    if divisor.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    acc = acc.div(&divisor)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFn> {
        let base = self.base()?;
        if *self.peek() == Tok::Caret {
            self.next();
            let t = self.next();
            let Tok::Int(e) = t.tok else {
                return Err(Error::Syntax {
                    line: t.line,
                    column: t.column,
                    message: "expected a nonnegative integer exponent".into(),
                });
            };
            let e = e.to_u32().ok_or(Error::Syntax {
                line: t.line,
                column: t.column,
                message: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<RatFn> {
        let t = self.next();
        match t.tok {
            Tok::Int(num) => {
                if *self.peek() == Tok::Slash {
                    if let Tok::Int(den) = self.peek2().clone() {
                        self.next();
                        self.next();
                        if den.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        return Ok(RatFn::constant(self.n(), Rational::new(num, den)));
                    }
                }
                Ok(RatFn::constant(self.n(), Rational::from_integer(num)))
            }
            Tok::Ident(name) => match self.vars.index_of(&name) {
                Some(i) => Ok(RatFn::from_poly(Poly::var(self.n(), i))),
                None => Err(Error::UnknownVariable {
                    name,
                    line: t.line,
                    column: t.column,
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error_here("expected `)`"));
                }
                self.next();
                Ok(inner)
            }
            Tok::End => Err(Error::Syntax {
                line: t.line,
                column: t.column,
                message: "unexpected end of input".into(),
            }),
            other => Err(Error::Syntax {
                line: t.line,
                column: t.column,
                message: format!("unexpected token {}", describe(&other)),
            }),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "integer",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Slash => "`/`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::End => "end of input",
    }
}

/// Parses `text` into an exact rational function over `vars`.
pub fn parse_expr(text: &str, vars: &VarSet) -> Result<RatFn> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, vars };
    let value = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error_here(format!("unexpected {}", describe(p.peek()))));
    }
    Ok(value)
}

/// Parses `text` and requires the value to be a polynomial.
pub fn parse_poly(text: &str, vars: &VarSet) -> Result<Poly> {
    parse_expr(text, vars)?
        .into_poly()
        .ok_or_else(|| Error::NotPolynomial(text.to_string()))
}
