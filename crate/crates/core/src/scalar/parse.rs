//! Parser and printer for the scalar text grammar.
//!
//! Grammar: integers; symbols `r2`, `r3`, `r6`, `t`, `s`, `k`, `l1`, `l2`;
//! operators `+ - * / ^` with nonnegative integer exponents on atoms and
//! parenthesized groups; standard precedence; unary minus; whitespace
//! insignificant. Rationals `p/q` fall out of the division operator.

use super::algnum::{AlgebraicNumber, Rational};
use super::poly::{Indeterminate, Poly, ALL_VARS, NVARS};
use super::{Scalar, ScalarError};
use num::{BigInt, One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Sym(Indeterminate),
    Root(u32), // r2, r3, r6
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ScalarError> {
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
            '-' => {
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
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                toks.push((start, Tok::Int(n)));
            }
            'a'..='z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                let name = &text[start..i];
                let tok = match name {
                    "r2" => Tok::Root(2),
                    "r3" => Tok::Root(3),
                    "r6" => Tok::Root(6),
                    _ => match Indeterminate::from_symbol(name) {
                        Some(v) => Tok::Sym(v),
                        None => {
                            return Err(ScalarError::UnknownSymbol {
                                pos: start,
                                name: name.to_string(),
                            })
                        }
                    },
                };
                toks.push((start, tok));
            }
            _ => {
                return Err(ScalarError::SyntaxError {
                    pos: i,
                    msg: format!("unexpected character '{c}'"),
                })
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

    fn bump(&mut self) -> Option<&(usize, Tok)> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> ScalarError {
        ScalarError::SyntaxError {
            pos: self.here(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = acc.div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            match self.bump().cloned() {
                Some((_, Tok::Int(n))) => {
                    if n.is_negative() {
                        return Err(self.err("exponent must be a nonnegative integer"));
                    }
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                    let mut acc = Scalar::one();
                    for _ in 0..e {
                        acc = acc.mul(&base);
                    }
                    return Ok(acc);
                }
                _ => return Err(self.err("expected integer exponent after '^'")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.bump().cloned() {
            Some((_, Tok::Int(n))) => Ok(Scalar::from_rational(Rational::from_integer(n))),
            Some((_, Tok::Sym(v))) => Ok(Scalar::var(v)),
            Some((_, Tok::Root(2))) => Ok(Scalar::from_algnum(AlgebraicNumber::sqrt2())),
            Some((_, Tok::Root(3))) => Ok(Scalar::from_algnum(AlgebraicNumber::sqrt3())),
            Some((_, Tok::Root(_))) => Ok(Scalar::from_algnum(AlgebraicNumber::sqrt6())),
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => Err(self.err("expected integer, symbol, or '('")),
        }
    }
}

pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
    };
    let s = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(s)
}

fn print_rat(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Render an algebraic number, e.g. `4+4*r2` or `-1/2*r6`.
pub fn print_algnum(x: &AlgebraicNumber) -> String {
    let comps: [(&Rational, Option<&str>); 4] = [
        (&x.a, None),
        (&x.b, Some("r2")),
        (&x.c, Some("r3")),
        (&x.d, Some("r6")),
    ];
    let mut out = String::new();
    for (r, sym) in comps {
        if r.is_zero() {
            continue;
        }
        let abs = r.abs();
        let mut body = match sym {
            None => print_rat(&abs),
            Some(s) => {
                if abs.is_one() {
                    s.to_string()
                } else {
                    format!("{}*{}", print_rat(&abs), s)
                }
            }
        };
        if r.is_negative() {
            body = format!("-{body}");
        } else if !out.is_empty() {
            body = format!("+{body}");
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn single_component(x: &AlgebraicNumber) -> bool {
    [&x.a, &x.b, &x.c, &x.d]
        .iter()
        .filter(|r| !r.is_zero())
        .count()
        <= 1
}

/// Render a polynomial with terms in descending lex monomial order.
pub fn print_poly(p: &Poly) -> String {
    if p.is_structurally_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let terms: Vec<_> = p.terms().collect();
    for (e, c) in terms.into_iter().rev() {
        let mut mono = String::new();
        for (vi, v) in ALL_VARS.iter().enumerate().take(NVARS) {
            if e[vi] == 0 {
                continue;
            }
            if !mono.is_empty() {
                mono.push('*');
            }
            if e[vi] == 1 {
                mono.push_str(v.symbol());
            } else {
                mono.push_str(&format!("{}^{}", v.symbol(), e[vi]));
            }
        }
        let body = if mono.is_empty() {
            print_algnum(c)
        } else if c.is_one() {
            mono
        } else if c == &-&AlgebraicNumber::one() {
            format!("-{mono}")
        } else if single_component(c) {
            format!("{}*{}", print_algnum(c), mono)
        } else {
            format!("({})*{}", print_algnum(c), mono)
        };
        if out.is_empty() || body.starts_with('-') {
            out.push_str(&body);
        } else {
            out.push('+');
            out.push_str(&body);
        }
    }
    out
}

/// Render a scalar; guaranteed to re-parse to an equal scalar.
pub fn print_scalar(x: &Scalar) -> String {
    let num = print_poly(x.numerator());
    if x.denominator().is_one() {
        num
    } else {
        format!("({})/({})", num, print_poly(x.denominator()))
    }
}
