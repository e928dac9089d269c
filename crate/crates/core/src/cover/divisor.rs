//! Divisors of rational functions on P¹ over F_p and the small expression
//! language used to write them (`x(x-1)`, `1/x + 1/(x^2+1)`, `2x^3/(x+1)^2`).

use std::fmt;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::poly::{self, Poly, RationalFunction};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// Monic irreducible polynomial.
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> u32 {
        match self {
            Place::Finite(f) => poly::degree(f).unwrap_or(0) as u32,
            Place::Infinity => 1,
        }
    }
    pub fn label(&self) -> String {
        match self {
            Place::Finite(f) => poly::format(f),
            Place::Infinity => "inf".into(),
        }
    }
    fn sort_key(&self) -> (u8, usize, Poly) {
        match self {
            Place::Finite(f) => (0, f.len(), f.iter().rev().copied().collect()),
            Place::Infinity => (1, 0, Vec::new()),
        }
    }
}

/// div(f) together with the leading constant, so that f itself is recoverable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunctionDivisor {
    pub p: u64,
    pub constant: u64,
    /// Nonzero multiplicities, finite places first, infinity last.
    pub entries: Vec<(Place, i64)>,
}

impl RationalFunctionDivisor {
    /// Validates a divisor given place by place. `infinity` may be omitted, in
    /// which case it is inferred from the degree condition.
    pub fn new(
        p: u64,
        constant: u64,
        finite: Vec<(Poly, i64)>,
        infinity: Option<i64>,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if constant % p == 0 {
            return Err(Error::InvalidDivisor("the leading constant must be nonzero".into()));
        }
        let mut entries: Vec<(Place, i64)> = Vec::new();
        let mut total: i64 = 0;
        for (f, m) in finite {
            let f = poly::trimmed(f);
            if !poly::is_monic_irreducible(&f, p) {
                return Err(Error::InvalidDivisor(format!(
                    "{} is not a monic irreducible polynomial over F_{p}",
                    poly::format(&f)
                )));
            }
            let place = Place::Finite(f);
            if entries.iter().any(|(q, _)| *q == place) {
                return Err(Error::InvalidDivisor(format!("place {} listed twice", place.label())));
            }
            total += place.degree() as i64 * m;
            if m != 0 {
                entries.push((place, m));
            }
        }
        let inf = -total;
        if let Some(given) = infinity {
            if given != inf {
                return Err(Error::InvalidDivisor(format!(
                    "multiplicity {given} at infinity, but the finite part forces {inf}"
                )));
            }
        }
        entries.sort_by_key(|(q, _)| q.sort_key());
        if inf != 0 {
            entries.push((Place::Infinity, inf));
        }
        Ok(RationalFunctionDivisor {
            p,
            constant: constant % p,
            entries,
        })
    }

    pub fn from_function(f: &RationalFunction) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::InvalidDivisor("the zero function has no divisor".into()));
        }
        let p = f.p;
        let (c, num) = poly::factor(&f.num, p)?;
        let (_, den) = poly::factor(&f.den, p)?;
        let mut finite: Vec<(Poly, i64)> = num.into_iter().map(|(g, m)| (g, m as i64)).collect();
        finite.extend(den.into_iter().map(|(g, m)| (g, -(m as i64))));
        Self::new(p, c, finite, None)
    }

    pub fn to_function(&self) -> RationalFunction {
        let p = self.p;
        let mut num = vec![self.constant];
        let mut den = vec![1];
        for (place, m) in &self.entries {
            if let Place::Finite(f) = place {
                let k = m.unsigned_abs() as u32;
                if *m > 0 {
                    num = poly::mul(&num, &poly::pow(f, k, p), p);
                } else {
                    den = poly::mul(&den, &poly::pow(f, k, p), p);
                }
            }
        }
        RationalFunction { p, num, den }
    }

    pub fn multiplicity(&self, place: &Place) -> i64 {
        self.entries
            .iter()
            .find(|(q, _)| q == place)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }
}

fn factor_string(f: &Poly) -> String {
    if *f == poly::x() {
        "x".into()
    } else {
        format!("({})", poly::format(f))
    }
}

impl fmt::Display for RationalFunctionDivisor {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = String::new();
        let mut den = String::new();
        for (place, m) in &self.entries {
            if let Place::Finite(f) = place {
                let k = m.unsigned_abs();
                let s = if k == 1 {
                    factor_string(f)
                } else {
                    format!("{}^{k}", factor_string(f))
                };
                if *m > 0 {
                    num.push_str(&s);
                } else {
                    den.push_str(&s);
                }
            }
        }
        let c = if self.constant == 1 && !num.is_empty() {
            String::new()
        } else {
            self.constant.to_string()
        };
        write!(out, "{c}{num}")?;
        if !den.is_empty() {
            write!(out, "/{den}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let t = match c {
            ' ' => {
                i += 1;
                continue;
            }
            'x' => Tok::X,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..=i].iter().collect();
                let v = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("number too large at column {}", start + 1)))?;
                out.push((start, Tok::Num(v)));
                i += 1;
                continue;
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character '{other}' at column {}",
                    i + 1
                )))
            }
        };
        out.push((i, t));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    p: u64,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }
    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| c + 1).unwrap_or(0)
    }
    fn err(&self, what: &str) -> Error {
        if self.pos >= self.toks.len() {
            Error::Parse(format!("{what} at end of expression"))
        } else {
            Error::Parse(format!("{what} at column {}", self.column()))
        }
    }
    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }
    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.div(&d).map_err(|_| self.err("division by zero"))?;
                }
                // juxtaposition: 2x, x(x-1), (x+1)(x+2)
                Some(Tok::X) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.power()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }
    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.unary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.peek().cloned() {
                Some(Tok::Num(k)) => {
                    self.pos += 1;
                    let k = k as i64;
                    return base.powi(if neg { -k } else { k });
                }
                _ => return Err(self.err("expected an integer exponent")),
            }
        }
        Ok(base)
    }
    fn unary(&mut self) -> Result<RationalFunction> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.atom()
    }
    fn atom(&mut self) -> Result<RationalFunction> {
        let p = self.p;
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(RationalFunction::poly(p, poly::constant((v % p) as i64, p)))
            }
            Some(Tok::X) => {
                self.pos += 1;
                Ok(RationalFunction::poly(p, poly::x()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.err("expected a number, 'x' or '('")),
        }
    }
}

/// Parses an expression in x over F_p.
pub fn parse_function(p: u64, text: &str) -> Result<RationalFunction> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut parser = Parser { p, toks, pos: 0 };
    let f = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err("unexpected trailing input"));
    }
    Ok(f)
}
