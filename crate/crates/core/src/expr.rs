//! Small expression language for scalars, algebra elements and tensors.
//!
//! Precedence from loosest to tightest: `+ -`, `#` (tensor), `* /`, unary `-`, `^`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::CycScalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Hash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
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
            out.push((Tok::Num(text.parse().unwrap()), col));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '#' => Tok::Hash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(Error::parse(col, format!("unexpected character `{other}`"))),
        };
        out.push((t, col));
        i += 1;
    }
    Ok(out)
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Ident(String, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64, usize),
    Tensor(Box<Expr>, Box<Expr>, usize),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.tensor()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.tensor()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.tensor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn tensor(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        while let Some(Tok::Hash) = self.peek() {
            let col = self.col();
            self.pos += 1;
            lhs = Expr::Tensor(Box::new(lhs), Box::new(self.product()?), col);
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    let col = self.col();
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), col);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if let Some(Tok::Plus) = self.peek() {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            let col = self.col();
            self.pos += 1;
            let neg = if let Some(Tok::Minus) = self.peek() {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = match self.peek() {
                Some(Tok::Num(n)) => {
                    let n: i64 = n
                        .try_into()
                        .map_err(|_| Error::parse(self.col(), "exponent too large"))?;
                    self.pos += 1;
                    n
                }
                _ => return Err(Error::parse(self.col(), "expected integer exponent")),
            };
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }, col));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Ident(s, col))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.sum()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(Error::parse(self.col(), "expected `)`")),
                }
            }
            Some(t) => Err(Error::parse(col, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(col, "unexpected end of input")),
        }
    }
}

pub fn parse(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: s.chars().count() + 1,
    };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(p.col(), "trailing input"));
    }
    Ok(e)
}

/// `zetaN` names the primitive N-th root of unity.
pub fn zeta_name(name: &str) -> Option<u64> {
    let digits = name.strip_prefix("zeta")?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&n| n >= 1)
}

/// A value domain that expressions can be evaluated in.
pub trait Domain {
    type Value: Clone;

    fn scalar(&self, c: CycScalar) -> Self::Value;
    fn ident(&self, name: &str) -> Option<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    /// The value as a scalar, when it is one (used for division and inverse powers).
    fn as_scalar(&self, a: &Self::Value) -> Option<CycScalar>;
    fn tensor(&self, _a: Self::Value, _b: Self::Value) -> Result<Self::Value> {
        Err(Error::parse(0, "tensor products are not allowed here"))
    }
}

pub fn eval<D: Domain>(d: &D, e: &Expr) -> Result<D::Value> {
    match e {
        Expr::Num(n) => Ok(d.scalar(CycScalar::from_rational(BigRational::from_integer(
            n.clone(),
        )))),
        Expr::Ident(name, col) => {
            if let Some(v) = d.ident(name) {
                return Ok(v);
            }
            if let Some(n) = zeta_name(name) {
                return Ok(d.scalar(CycScalar::root_of_unity(n, 1)));
            }
            Err(Error::parse(*col, format!("unknown symbol `{name}`")))
        }
        Expr::Add(a, b) => d.add(eval(d, a)?, eval(d, b)?),
        Expr::Sub(a, b) => {
            let b = d.neg(eval(d, b)?);
            d.add(eval(d, a)?, b)
        }
        Expr::Mul(a, b) => d.mul(eval(d, a)?, eval(d, b)?),
        Expr::Div(a, b, col) => {
            let bv = eval(d, b)?;
            let s = d
                .as_scalar(&bv)
                .ok_or_else(|| Error::parse(*col, "can only divide by scalars"))?;
            let inv = s
                .inv()
                .map_err(|_| Error::parse(*col, "division by zero"))?;
            d.mul(eval(d, a)?, d.scalar(inv))
        }
        Expr::Neg(a) => Ok(d.neg(eval(d, a)?)),
        Expr::Pow(a, k, col) => {
            let base = eval(d, a)?;
            if *k < 0 {
                let s = d
                    .as_scalar(&base)
                    .ok_or_else(|| Error::parse(*col, "negative powers need a scalar base"))?;
                let p = s
                    .pow(*k)
                    .map_err(|_| Error::parse(*col, "division by zero"))?;
                return Ok(d.scalar(p));
            }
            let mut acc = d.scalar(CycScalar::one());
            for _ in 0..*k {
                acc = d.mul(acc, base.clone())?;
            }
            Ok(acc)
        }
        Expr::Tensor(a, b, col) => d
            .tensor(eval(d, a)?, eval(d, b)?)
            .map_err(|err| match err {
                Error::Parse { column: 0, message, .. } => Error::parse(*col, message),
                other => other,
            }),
    }
}

struct ScalarDomain;

impl Domain for ScalarDomain {
    type Value = CycScalar;
    fn scalar(&self, c: CycScalar) -> CycScalar {
        c
    }
    fn ident(&self, _name: &str) -> Option<CycScalar> {
        None
    }
    fn add(&self, a: CycScalar, b: CycScalar) -> Result<CycScalar> {
        Ok(&a + &b)
    }
    fn neg(&self, a: CycScalar) -> CycScalar {
        -a
    }
    fn mul(&self, a: CycScalar, b: CycScalar) -> Result<CycScalar> {
        Ok(&a * &b)
    }
    fn as_scalar(&self, a: &CycScalar) -> Option<CycScalar> {
        Some(a.clone())
    }
}

pub fn parse_scalar(s: &str) -> Result<CycScalar> {
    eval_scalar(&parse(s)?)
}

pub fn eval_scalar(e: &Expr) -> Result<CycScalar> {
    eval(&ScalarDomain, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let x = parse_scalar("1 + 2*3^2").unwrap();
        assert_eq!(x, CycScalar::from_int(19));
        assert_eq!(parse_scalar("-2^2").unwrap(), CycScalar::from_int(-4));
        assert_eq!(parse_scalar("(1+1)/4").unwrap(), CycScalar::frac(1, 2));
        assert_eq!(parse_scalar("zeta4^2").unwrap(), CycScalar::from_int(-1));
        assert_eq!(
            parse_scalar("zeta3^-1").unwrap(),
            CycScalar::root_of_unity(3, 2)
        );
    }

    #[test]
    fn errors_carry_columns() {
        match parse_scalar("1 + $") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        match parse_scalar("1 + foo") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_scalar("(1").is_err());
        assert!(parse_scalar("1/0").is_err());
    }
}
