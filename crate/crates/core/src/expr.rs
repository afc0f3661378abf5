//! Polynomial expression syntax used in input files: identifiers, integer
//! and `a/b` literals, `+ - * ^` and parentheses, e.g. `x*y + 2*z^2`.
//! Juxtaposition is not multiplication; write `x*y`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const { num: BigInt, den: BigInt },
    Ident(String),
    Sum(Vec<Expr>),
    Neg(Box<Expr>),
    /// Factors kept in written order; evaluation is left to right.
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

/// Interpretation of an [`Expr`] in some ring-like structure.
pub trait Evaluator {
    type Value: Clone;

    fn constant(&self, num: &BigInt, den: &BigInt) -> Result<Self::Value>;
    fn ident(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: &Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
}

impl Expr {
    pub fn eval<V: Evaluator>(&self, ev: &V) -> Result<V::Value> {
        match self {
            Expr::Const { num, den } => ev.constant(num, den),
            Expr::Ident(name) => ev.ident(name),
            Expr::Sum(terms) => {
                let mut acc = ev.constant(&BigInt::from(0), &BigInt::one())?;
                for t in terms {
                    acc = ev.add(&acc, &t.eval(ev)?)?;
                }
                Ok(acc)
            }
            Expr::Neg(e) => ev.neg(&e.eval(ev)?),
            Expr::Product(factors) => {
                let mut acc = ev.constant(&BigInt::one(), &BigInt::one())?;
                for fct in factors {
                    acc = ev.mul(&acc, &fct.eval(ev)?)?;
                }
                Ok(acc)
            }
            Expr::Pow(base, e) => {
                let b = base.eval(ev)?;
                let mut acc = ev.constant(&BigInt::one(), &BigInt::one())?;
                for _ in 0..*e {
                    acc = ev.mul(&acc, &b)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn identifiers(&self, out: &mut Vec<String>) {
        match self {
            Expr::Const { .. } => {}
            Expr::Ident(n) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Expr::Sum(v) | Expr::Product(v) => v.iter().for_each(|e| e.identifiers(out)),
            Expr::Neg(e) | Expr::Pow(e, _) => e.identifiers(out),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' | '\n' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Token::Plus)),
            '-' | '\u{2212}' => out.push((start, Token::Minus)),
            '*' | '\u{b7}' => out.push((start, Token::Star)),
            '/' => out.push((start, Token::Slash)),
            '^' => out.push((start, Token::Caret)),
            '(' => out.push((start, Token::LParen)),
            ')' => out.push((start, Token::RParen)),
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                out.push((start, Token::Int(lit.parse().expect("digits"))));
                continue;
            }
            a if a.is_alphabetic() || a == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push((start, Token::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(Error::Parse(format!("unexpected `{other}` at position {start} in `{s}`")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn err(&self, what: &str) -> Error {
        let at = self.toks.get(self.pos).map_or(self.src.len(), |(p, _)| *p);
        Error::Parse(format!("{what} at position {at} in `{}`", self.src))
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            negate = true;
        } else if self.peek() == Some(&Token::Plus) {
            self.pos += 1;
        }
        loop {
            let t = self.product()?;
            terms.push(if negate { Expr::Neg(Box::new(t)) } else { t });
            match self.peek() {
                Some(Token::Plus) => negate = false,
                Some(Token::Minus) => negate = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn product(&mut self) -> Result<Expr> {
        let mut factors = vec![self.power()?];
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            factors.push(self.power()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(self.err("expected integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Token::Int(d)) => {
                            self.pos += 1;
                            if d == BigInt::from(0) {
                                return Err(self.err("zero denominator"));
                            }
                            Ok(Expr::Const { num: n, den: d })
                        }
                        _ => Err(self.err("expected integer denominator")),
                    }
                } else {
                    Ok(Expr::Const { num: n, den: BigInt::one() })
                }
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Ident(name))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.power()?)))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { src, toks, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Integer polynomial evaluation at fixed points, as a parser oracle.
    struct AtPoint;

    impl Evaluator for AtPoint {
        type Value = i64;
        fn constant(&self, n: &BigInt, d: &BigInt) -> Result<i64> {
            let n: i64 = n.try_into().unwrap();
            let d: i64 = d.try_into().unwrap();
            Ok(n / d)
        }
        fn ident(&self, name: &str) -> Result<i64> {
            match name {
                "x" => Ok(3),
                "y" => Ok(5),
                "z" => Ok(-2),
                _ => Err(Error::Parse(format!("unknown {name}"))),
            }
        }
        fn add(&self, a: &i64, b: &i64) -> Result<i64> {
            Ok(a + b)
        }
        fn neg(&self, a: &i64) -> Result<i64> {
            Ok(-a)
        }
        fn mul(&self, a: &i64, b: &i64) -> Result<i64> {
            Ok(a * b)
        }
    }

    fn ev(s: &str) -> i64 {
        parse(s).unwrap().eval(&AtPoint).unwrap()
    }

    #[test]
    fn precedence_and_signs() {
        assert_eq!(ev("x*y + 2*z^2"), 15 + 8);
        assert_eq!(ev("-x - y"), -8);
        assert_eq!(ev("-(x+y)^2"), -64);
        assert_eq!(ev("x - -y"), 8);
        assert_eq!(ev("4/2*x"), 6);
    }

    #[test]
    fn errors_carry_position() {
        let e = parse("x + * y").unwrap_err().to_string();
        assert!(e.contains("position 4"), "{e}");
        assert!(parse("x^y").is_err());
        assert!(parse("(x").is_err());
        assert!(parse("").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("x $ y").is_err());
    }

    #[test]
    fn keeps_factor_order() {
        let e = parse("u*v - v*u").unwrap();
        let mut ids = Vec::new();
        e.identifiers(&mut ids);
        assert_eq!(ids, vec!["u".to_string(), "v".to_string()]);
        match e {
            Expr::Sum(t) => assert_eq!(t.len(), 2),
            _ => panic!("expected a sum"),
        }
    }
}
