//! Sparse multivariate polynomials over `Q` and a small expression parser,
//! used to enter the cover equations and printed fixtures as text.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut m = Self::zero(nvars);
        if !c.is_zero() {
            m.terms.insert(vec![0; nvars], c);
        }
        m
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly {
            nvars,
            terms: BTreeMap::from([(e, Rat::one())]),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, e: Vec<u32>, c: Rat) {
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.insert(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        MPoly {
            nvars: self.nvars,
            terms: acc,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::constant(self.nvars, Rat::one());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Substitutes `x_i = v` and drops that variable's exponent.
    pub fn substitute(&self, i: usize, v: &Rat) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            let f = num_traits::pow(v.clone(), k as usize);
            out.insert(e2, c * f);
        }
        out
    }

    /// Coefficients of the polynomial in variable `i` when it is the only
    /// variable left (others must have exponent zero).
    pub fn univariate(&self, i: usize) -> Result<Vec<Rat>> {
        let n = self.degree_in(i) as usize;
        let mut out = vec![Rat::zero(); n + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return Err(Error::Precondition("expression is not univariate".into()));
            }
            out[e[i] as usize] += c;
        }
        Ok(out)
    }
}

/// Result of parsing: the polynomial and the digit sum of the integer
/// literals of each top-level additive term, in order.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub poly: MPoly,
    pub term_digit_sums: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Int, u64),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = cs[start..i].iter().collect();
            let ds = s.bytes().map(|b| (b - b'0') as u64).sum();
            out.push(Tok::Num(s.parse().unwrap(), ds));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a [&'a str],
    consts: &'a [(&'a str, Rat)],
    digits: u64,
}

impl<'a> Parser<'a> {
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

    fn sum(&mut self, top: bool, sums: &mut Vec<u64>) -> Result<MPoly> {
        let n = self.vars.len();
        let mut acc = MPoly::zero(n);
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else if self.eat('+') {
                false
            } else if first {
                false
            } else {
                break;
            };
            first = false;
            let before = self.digits;
            let t = self.product()?;
            if top {
                sums.push(self.digits - before);
            }
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                let c = d
                    .univariate(0)
                    .ok()
                    .filter(|v| v.len() == 1)
                    .map(|v| v[0].clone());
                match c {
                    Some(c) if !c.is_zero() => {
                        acc = acc.mul(&MPoly::constant(self.vars.len(), Rat::one() / c))
                    }
                    _ => return Err(Error::Parse("division by a non-constant".into())),
                }
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                // implicit multiplication: 2x, 3(x+1)
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(k, ds)) => {
                    self.pos += 1;
                    self.digits += ds;
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| Error::Parse("huge exponent".into()))?;
                    return Ok(base.pow(k));
                }
                Some(Tok::Op('(')) => {
                    self.pos += 1;
                    let e = match self.toks.get(self.pos).cloned() {
                        Some(Tok::Num(k, ds)) => {
                            self.digits += ds;
                            k
                        }
                        _ => return Err(Error::Parse("exponent must be an integer".into())),
                    };
                    self.pos += 1;
                    if !self.eat(')') {
                        return Err(Error::Parse("missing ')' after exponent".into()));
                    }
                    let k: u32 = e
                        .try_into()
                        .map_err(|_| Error::Parse("huge exponent".into()))?;
                    return Ok(base.pow(k));
                }
                _ => return Err(Error::Parse("exponent must be an integer".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        let n = self.vars.len();
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(v, ds)) => {
                self.pos += 1;
                self.digits += ds;
                Ok(MPoly::constant(n, Rat::from_integer(v)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    return Ok(MPoly::var(n, i));
                }
                if let Some((_, c)) = self.consts.iter().find(|(k, _)| *k == name) {
                    return Ok(MPoly::constant(n, c.clone()));
                }
                Err(Error::Parse(format!("unknown symbol {name:?}")))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let mut dummy = Vec::new();
                let e = self.sum(false, &mut dummy)?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses `src` as a polynomial in `vars` with named rational constants.
pub fn parse_expr(src: &str, vars: &[&str], consts: &[(&str, Rat)]) -> Result<Parsed> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        consts,
        digits: 0,
    };
    let mut sums = Vec::new();
    let poly = p.sum(true, &mut sums)?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(Parsed {
        poly,
        term_digit_sums: sums,
    })
}

/// Parses a univariate integer polynomial written symbolically
/// (`x^12 - 12*x^10 + ...`), in any single variable name.
pub fn parse_int_poly(src: &str, var: &str) -> Result<super::IntPoly> {
    parse_int_poly_with(src, var, &[])
}

pub fn parse_int_poly_with(src: &str, var: &str, consts: &[(&str, Rat)]) -> Result<super::IntPoly> {
    let parsed = parse_expr(src, &[var], consts)?;
    let c = parsed.poly.univariate(0)?;
    if c.iter().any(|x| !x.is_integer()) {
        return Err(Error::Parse("non-integral coefficient".into()));
    }
    Ok(super::IntPoly::new(
        c.into_iter().map(|x| x.to_integer()).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn expands_products_and_powers() {
        let p = parse_int_poly("(x+1)^3 - 2*(x-1)", "x").unwrap();
        assert_eq!(p, super::super::IntPoly::from_i64(&[3, 1, 3, 1]));
    }

    #[test]
    fn constants_and_digit_sums() {
        let parsed = parse_expr("y^2 + 2*e^3 - 19", &["y"], &[("e", rat(11, 1))]).unwrap();
        assert_eq!(parsed.term_digit_sums, vec![2, 5, 10]);
        let c = parsed.poly.univariate(0).unwrap();
        assert_eq!(c[0], rat(2 * 1331 - 19, 1));
    }

    #[test]
    fn bivariate_substitution() {
        let parsed = parse_expr("3*x^2 - s*2^11*x^2 + 1", &["s", "x"], &[]).unwrap();
        let at = parsed.poly.substitute(0, &rat(1, 2));
        let c = at.univariate(1).unwrap();
        assert_eq!(c, vec![rat(1, 1), rat(0, 1), rat(3 - 1024, 1)]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("x^^2", &["x"], &[]).is_err());
        assert!(parse_expr("x + q", &["x"], &[]).is_err());
        assert!(parse_expr("(x+1", &["x"], &[]).is_err());
    }
}
