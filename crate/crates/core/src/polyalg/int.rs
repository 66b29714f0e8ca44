use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Int, Rat};

/// Dense univariate polynomial over `Z`, ascending coefficients, no
/// trailing zeros. The zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    c: Vec<Int>,
}

impl IntPoly {
    pub fn new(mut c: Vec<Int>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        IntPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Int::from(v)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            c: vec![Int::one()],
        }
    }

    pub fn constant(v: Int) -> Self {
        Self::new(vec![v])
    }

    pub fn x() -> Self {
        IntPoly {
            c: vec![Int::zero(), Int::one()],
        }
    }

    pub fn monomial(k: usize, coeff: Int) -> Self {
        let mut c = vec![Int::zero(); k + 1];
        c[k] = coeff;
        Self::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0 (check `is_zero` separately).
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<Int> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.c.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn lc(&self) -> Int {
        self.c.last().cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|x| x.is_one())
    }

    pub fn scale(&self, k: &Int) -> Self {
        Self::new(self.c.iter().map(|x| x * k).collect())
    }

    /// Divides every coefficient by `k`; panics if the division is inexact.
    pub fn div_int_exact(&self, k: &Int) -> Self {
        IntPoly {
            c: self
                .c
                .iter()
                .map(|x| {
                    let (q, r) = x.div_rem(k);
                    assert!(r.is_zero(), "inexact coefficient division");
                    q
                })
                .collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * Int::from(i))
                .collect(),
        )
    }

    pub fn content(&self) -> Int {
        self.c.iter().fold(Int::zero(), |g, x| g.gcd(x))
    }

    /// Content 1 and positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        self.div_int_exact(&g)
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one() && self.lc().is_positive()
    }

    /// Clears denominators and returns the primitive integral multiple.
    pub fn from_rats(c: &[Rat]) -> Self {
        let l = c.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
        Self::new(
            c.iter()
                .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }

    pub fn to_rats(&self) -> Vec<Rat> {
        self.c.iter().cloned().map(Rat::from_integer).collect()
    }

    pub fn eval(&self, x: &Int) -> Int {
        self.c.iter().rev().fold(Int::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        self.c
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, a| acc * x + Rat::from_integer(a.clone()))
    }

    /// `g(y) = f(y^2)`.
    pub fn substitute_square(&self) -> Self {
        let mut c = vec![Int::zero(); 2 * self.c.len().max(1) - 1];
        for (i, a) in self.c.iter().enumerate() {
            c[2 * i] = a.clone();
        }
        Self::new(c)
    }

    pub fn is_even(&self) -> bool {
        self.c
            .iter()
            .enumerate()
            .all(|(i, a)| i % 2 == 0 || a.is_zero())
    }

    /// `f(-x)`.
    pub fn negate_var(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a } else { a.clone() })
                .collect(),
        )
    }

    /// Monic integral `a_n^{n-1} f(x / a_n)` defining the same field.
    pub fn monicize(&self) -> Self {
        let n = self.deg();
        let an = self.lc();
        if an.is_one() {
            return self.clone();
        }
        // the coefficient of x^i picks up a_n^{n-1-i}
        let mut out = vec![Int::zero(); n + 1];
        out[n] = Int::one();
        let mut pw = Int::one();
        for i in (0..n).rev() {
            out[i] = &self.c[i] * &pw;
            pw *= &an;
        }
        Self::new(out)
    }

    /// Pseudo-remainder `lc(b)^{deg a - deg b + 1} a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero());
        if self.is_zero() || self.deg() < b.deg() {
            return self.clone();
        }
        let db = b.deg();
        let lb = b.lc();
        let mut r = self.c.clone();
        let mut delta = self.deg() - db + 1;
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1;
            let lr = r[k].clone();
            if lr.is_zero() {
                r.pop();
                continue;
            }
            for x in r.iter_mut() {
                *x *= &lb;
            }
            let shift = k - db;
            for (i, bi) in b.c.iter().enumerate() {
                r[i + shift] -= &lr * bi;
            }
            r.pop();
            delta -= 1;
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        let r = IntPoly::new(r);
        if delta > 0 {
            r.scale(&num_traits::pow(lb, delta))
        } else {
            r
        }
    }

    /// Exact quotient `self / b` over `Z`, or `None` if `b` does not divide.
    pub fn div_exact(&self, b: &IntPoly) -> Option<IntPoly> {
        assert!(!b.is_zero());
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.deg() < b.deg() {
            return None;
        }
        let db = b.deg();
        let lb = b.lc();
        let mut r = self.c.clone();
        let mut q = vec![Int::zero(); self.deg() - db + 1];
        for k in (db..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let (qk, rem) = r[k].div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, bi) in b.c.iter().enumerate() {
                r[i + k - db] -= &qk * bi;
            }
            q[k - db] = qk;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.deg() >= other.deg() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        a.primitive_part()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Yun squarefree decomposition of the primitive part: `[(g_i, i)]`.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, u32)> {
        let f = self.primitive_part();
        let mut out = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = fp.div_exact(&a0).expect("gcd divides derivative");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            if b.deg() == a.deg() {
                break;
            }
            b = b.div_exact(&a).expect("divides");
            c = d.div_exact(&a).expect("divides");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Subresultant PRS resultant (fraction free).
    pub fn resultant(&self, other: &IntPoly) -> Int {
        resultant(self, other)
    }

    /// `(-1)^{n(n-1)/2} res(f, f') / lc(f)`; zero when `f` is not squarefree.
    pub fn discriminant(&self) -> Int {
        let n = self.deg();
        assert!(n >= 1 && !self.is_zero(), "discriminant needs degree >= 1");
        let r = resultant(self, &self.derivative());
        let (q, rem) = r.div_rem(&self.lc());
        debug_assert!(rem.is_zero());
        if (n * (n - 1) / 2) % 2 == 1 {
            -q
        } else {
            q
        }
    }

    pub fn mod_p(&self, p: u64) -> super::FpPoly {
        let pb = Int::from(p);
        super::FpPoly::new(
            p,
            self.c
                .iter()
                .map(|x| x.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }

    /// Coefficient sup-norm and Euclidean norm bound `ceil(||f||_2)`.
    pub fn norm2_ceil(&self) -> Int {
        let s: Int = self.c.iter().map(|x| x * x).sum();
        num_integer::Roots::sqrt(&s) + Int::one()
    }

    /// `deg n: c0 c1 ... cn`.
    pub fn to_text(&self) -> String {
        let mut s = format!("deg {}:", self.deg());
        for a in &self.c {
            s.push(' ');
            s.push_str(&a.to_string());
        }
        s
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("{m} in {s:?}"));
        let (head, body) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let n: usize = head
            .trim()
            .strip_prefix("deg")
            .ok_or_else(|| bad("missing 'deg'"))?
            .trim()
            .parse()
            .map_err(|_| bad("bad degree"))?;
        let c: Vec<Int> = body
            .split_whitespace()
            .map(|t| t.parse::<Int>().map_err(|_| bad("bad coefficient")))
            .collect::<Result<_>>()?;
        if c.len() != n + 1 {
            return Err(bad("coefficient count does not match degree"));
        }
        let p = Self::new(c);
        if p.deg() != n {
            return Err(bad("leading coefficient is zero"));
        }
        Ok(p)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coef = if mag.is_one() && i > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{}{}x", coef, if coef.is_empty() { "" } else { "*" })?,
                _ => write!(
                    f,
                    "{}{}x^{}",
                    coef,
                    if coef.is_empty() { "" } else { "*" },
                    i
                )?,
            }
        }
        Ok(())
    }
}

fn add_vec(a: &[Int], b: &[Int], sign: bool) -> Vec<Int> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) if sign => x - y,
                Some(y) => x + y,
                None => x,
            }
        })
        .collect()
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        IntPoly::new(add_vec(&self.c, &o.c, false))
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        IntPoly::new(add_vec(&self.c, &o.c, true))
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![Int::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }
}

/// Resultant by the subresultant algorithm (Collins / Brown).
pub fn resultant(a: &IntPoly, b: &IntPoly) -> Int {
    if a.is_zero() || b.is_zero() {
        return Int::zero();
    }
    if a.deg() == 0 {
        return num_traits::pow(a.lc(), b.deg());
    }
    if b.deg() == 0 {
        return num_traits::pow(b.lc(), a.deg());
    }
    let ca = a.content();
    let cb = b.content();
    let mut a = a.div_int_exact(&ca);
    let mut b = b.div_int_exact(&cb);
    let t = num_traits::pow(ca, b.deg()) * num_traits::pow(cb, a.deg());
    let mut s = Int::one();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
    }
    let mut g = Int::one();
    let mut h = Int::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return Int::zero();
        }
        a = b;
        let div = &g * num_traits::pow(h.clone(), delta);
        b = r.div_int_exact(&div);
        g = a.lc();
        // h <- h^{1-delta} g^delta
        h = if delta == 0 {
            h
        } else {
            let num = num_traits::pow(g.clone(), delta);
            let den = num_traits::pow(h.clone(), delta - 1);
            let (q, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero());
            q
        };
        if b.deg() == 0 {
            let da = a.deg();
            let lb = b.lc();
            // h <- h^{1 - deg a} lb^{deg a}
            let num = num_traits::pow(lb, da);
            let hn = if da == 0 {
                h * num
            } else {
                let den = num_traits::pow(h, da - 1);
                let (q, rem) = num.div_rem(&den);
                debug_assert!(rem.is_zero());
                q
            };
            return s * t * hn;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn resultant_small() {
        // res(x^2 - 1, x - 2) = prod over roots of x-2 of (x^2-1) = 3
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-2, 1])), Int::from(3));
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-1, 0, 1])), Int::from(3));
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-1, 1])), Int::zero());
    }

    #[test]
    fn discriminants_small() {
        assert_eq!(p(&[-1, 0, 1]).discriminant(), Int::from(4));
        assert_eq!(p(&[1, 1, 1]).discriminant(), Int::from(-3));
        // x^3 - x^2 - 2x - 8
        assert_eq!(p(&[-8, -2, -1, 1]).discriminant(), Int::from(-4 * 503));
        assert_eq!(p(&[1, 2, 1]).discriminant(), Int::zero());
        // 2x^2 + 3x + 5: 9 - 40
        assert_eq!(p(&[5, 3, 2]).discriminant(), Int::from(-31));
    }

    #[test]
    fn monicize_keeps_roots_scaled() {
        let f = p(&[5, 3, 2]);
        let g = f.monicize();
        assert!(g.is_monic());
        // roots scale by 2: g(x) = x^2 + 3x + 10
        assert_eq!(g, p(&[10, 3, 1]));
    }

    #[test]
    fn text_round_trip() {
        let f = p(&[-1314, 1188, 486, 900]);
        let t = f.to_text();
        assert_eq!(t, "deg 3: -1314 1188 486 900");
        assert_eq!(IntPoly::from_text(&t).unwrap(), f);
        assert!(IntPoly::from_text("deg 2: 1 2").is_err());
    }

    #[test]
    fn squarefree_decomposition_yun() {
        let a = p(&[-1, 1]);
        let b = p(&[1, 0, 1]);
        let f = &(&a * &a) * &(&(&b * &b) * &b);
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(a, 2), (b, 3)]);
    }

    #[test]
    fn display_symbolic() {
        assert_eq!(p(&[5, -1, 0, 2]).to_string(), "2*x^3 - x + 5");
    }
}
