//! Integers, rationals, quadratic elements and prime-field arithmetic.
//!
//! `Int`/`Rat` are the `num` bignum types; everything here is pure.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: Int) -> Rat {
    Rat::from_integer(n)
}

/// Parses `n`, `n/d`, or a power form such as `2^6` / `5^3/2^2`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = parse_int_expr(n)?;
    let den = match d {
        Some(d) => parse_int_expr(d)?,
        None => Int::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

/// Integer literal, optionally a product of `b^e` factors (`2^6*3^15*11`).
pub fn parse_int_expr(s: &str) -> Result<Int> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, s.strip_prefix('+').unwrap_or(s).trim()),
    };
    let body = body.trim_start_matches('(').trim_end_matches(')');
    if body.is_empty() {
        return Err(Error::Parse(format!("empty integer in {s:?}")));
    }
    let mut acc = Int::one();
    for factor in body.split('*') {
        let factor = factor.trim();
        let (b, e) = match factor.split_once('^') {
            Some((b, e)) => (b.trim(), e.trim()),
            None => (factor, "1"),
        };
        let base = Int::from_str(b).map_err(|_| Error::Parse(format!("bad integer {b:?}")))?;
        let exp: u32 = e
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
        acc *= num_traits::pow(base, exp as usize);
    }
    Ok(if neg { -acc } else { acc })
}

// ---------------------------------------------------------------------------
// valuations

/// `ord_p(n)` for nonzero `n`.
pub fn val_int(n: &Int, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = Int::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Strips every factor of `p`, returning `(ord_p(n), n / p^ord)`.
pub fn split_val(n: &Int, p: &Int) -> (u32, Int) {
    let mut v = 0;
    let mut m = n.clone();
    if m.is_zero() {
        return (0, m);
    }
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return (v, m);
        }
        m = q;
        v += 1;
    }
}

pub fn ord_p(x: &Rat, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    Ok(val_int(x.numer(), p) as i64 - val_int(x.denom(), p) as i64)
}

/// `x = sign * prod p^e_p * num/den` with `num, den` positive and prime to `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SDecomposition {
    pub sign: i8,
    pub exps: BTreeMap<u64, i64>,
    pub num: Int,
    pub den: Int,
}

impl SDecomposition {
    pub fn recompose(&self) -> Rat {
        let mut r = Rat::new(self.num.clone(), self.den.clone());
        for (&p, &e) in &self.exps {
            let pe = Rat::from_integer(num_traits::pow(Int::from(p), e.unsigned_abs() as usize));
            r = if e >= 0 { r * pe } else { r / pe };
        }
        if self.sign < 0 {
            -r
        } else {
            r
        }
    }

    pub fn is_s_unit(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

pub fn s_decompose(x: &Rat, s: &[u64]) -> Result<SDecomposition> {
    if x.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let sign = if x.is_negative() { -1 } else { 1 };
    let mut num = x.numer().abs();
    let mut den = x.denom().clone();
    let mut exps = BTreeMap::new();
    for &p in s {
        let pb = Int::from(p);
        let (vn, n2) = split_val(&num, &pb);
        let (vd, d2) = split_val(&den, &pb);
        num = n2;
        den = d2;
        let e = vn as i64 - vd as i64;
        if e != 0 {
            exps.insert(p, e);
        }
    }
    Ok(SDecomposition {
        sign,
        exps,
        num,
        den,
    })
}

// ---------------------------------------------------------------------------
// machine-word modular arithmetic

#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo prime `p`; `a` must be nonzero mod `p`.
pub fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'base: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

// bases 2..41 are deterministic below 3.317e24
const MR_DETERMINISTIC: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const MR_EXTRA_ROUNDS: usize = 40;

pub fn is_prime(n: &Int) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for p in small_primes().iter().take(200) {
        if (n % *p).is_zero() {
            return false;
        }
    }
    let one = Int::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let bound: Int = "3317044064679887385961981".parse().unwrap();
    let mut bases: Vec<Int> = MR_DETERMINISTIC.iter().map(|&b| Int::from(b)).collect();
    if n >= &bound {
        // beyond the proven range: extra fixed pseudo-random bases
        let mut x: u64 = 0x9e37_79b9_7f4a_7c15;
        for _ in 0..MR_EXTRA_ROUNDS {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            bases.push(Int::from(x % (1 << 62)) + 2u32);
        }
    }
    'base: for a in bases {
        let a = a % n;
        if a.is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

fn small_primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| primes_up_to(1_000_000))
}

/// Primes in `[lo, hi]`, by segmented sieve.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || hi < lo {
        return Vec::new();
    }
    let lo = lo.max(2);
    let root = hi.sqrt() + 1;
    let base = primes_up_to(root);
    let mut mark = vec![true; (hi - lo + 1) as usize];
    for &p in &base {
        let mut start = (lo.div_ceil(p) * p).max(p * p);
        while start <= hi {
            mark[(start - lo) as usize] = false;
            start += p;
        }
    }
    mark.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| lo + i as u64)
        .collect()
}

/// The first `count` primes `>= start` that are not in `exclude`.
pub fn first_primes(start: u64, count: usize, exclude: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut lo = start;
    let mut width = (count as u64 * 20).max(1 << 12);
    while out.len() < count {
        for p in primes_between(lo, lo + width) {
            if !exclude.contains(&p) {
                out.push(p);
                if out.len() == count {
                    break;
                }
            }
        }
        lo += width + 1;
        width *= 2;
    }
    out
}

// ---------------------------------------------------------------------------
// factoring

#[derive(Debug, Clone, Copy)]
pub struct FactorBudget {
    pub trial_bound: u64,
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 1_000_000,
            rho_iterations: 1 << 22,
        }
    }
}

/// Prime factorization with an explicit leftover for anything the budget
/// could not split. `cofactor` is never a proven prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(Int, u32)>,
    pub cofactor: Option<Int>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_none()
    }

    pub fn recompose(&self) -> Int {
        let mut r = Int::from(self.sign);
        for (p, e) in &self.factors {
            r *= num_traits::pow(p.clone(), *e as usize);
        }
        if let Some(c) = &self.cofactor {
            r *= c;
        }
        r
    }

    pub fn primes_u64(&self) -> Vec<u64> {
        self.factors
            .iter()
            .filter_map(|(p, _)| p.to_u64())
            .collect()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        let p = Int::from(p);
        self.factors
            .iter()
            .find(|(q, _)| *q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }
}

pub fn factor_int(n: &Int) -> Factorization {
    factor_int_with(n, FactorBudget::default())
}

pub fn factor_int_with(n: &Int, budget: FactorBudget) -> Factorization {
    assert!(!n.is_zero(), "factor_int of zero");
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut found: BTreeMap<Int, u32> = BTreeMap::new();
    for &p in small_primes()
        .iter()
        .take_while(|&&p| p <= budget.trial_bound)
    {
        let pb = Int::from(p);
        if &pb * &pb > m {
            break;
        }
        let (v, rest) = split_val(&m, &pb);
        if v > 0 {
            found.insert(pb, v);
            m = rest;
        }
    }
    let mut leftover = Int::one();
    let mut stack = vec![m];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            *found.entry(c).or_insert(0) += 1;
            continue;
        }
        if let Some(r) = perfect_power_base(&c) {
            let (b, k) = r;
            for _ in 0..k {
                stack.push(b.clone());
            }
            continue;
        }
        match pollard_brent(&c, budget.rho_iterations) {
            Some(d) => {
                let e = &c / &d;
                stack.push(d);
                stack.push(e);
            }
            None => leftover *= c,
        }
    }
    Factorization {
        sign,
        factors: found.into_iter().collect(),
        cofactor: if leftover.is_one() {
            None
        } else {
            Some(leftover)
        },
    }
}

fn perfect_power_base(n: &Int) -> Option<(Int, u32)> {
    let bits = n.bits() as u32;
    for k in (2..=bits.min(64)).rev() {
        let r = n.nth_root(k);
        if &num_traits::pow(r.clone(), k as usize) == n {
            return Some((r, k));
        }
    }
    None
}

fn pollard_brent(n: &Int, max_iter: u64) -> Option<Int> {
    if n.is_even() {
        return Some(Int::from(2));
    }
    for c0 in 1u32..8 {
        let c = Int::from(c0);
        let f = |x: &Int| (x * x + &c) % n;
        let mut y = Int::from(2);
        let mut r: u64 = 1;
        let mut q = Int::one();
        let mut g = Int::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut iters = 0u64;
        let m = 128u64;
        while g.is_one() && iters < max_iter {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (&q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            iters += r;
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && &g != n {
            return Some(g);
        }
        if iters >= max_iter {
            return None;
        }
    }
    None
}

/// Exact `k`-th root when it exists (negative inputs allowed for odd `k`).
pub fn exact_root(n: &Int, k: u32) -> Option<Int> {
    if k == 0 {
        return None;
    }
    if n.is_negative() {
        if k.is_multiple_of(2) {
            return None;
        }
        return exact_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    Some(Rat::new(
        exact_root(x.numer(), 2)?,
        exact_root(x.denom(), 2)?,
    ))
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: &Int, n: &Int) -> i8 {
    assert!(
        n.is_positive() && n.is_odd(),
        "jacobi needs odd positive modulus"
    );
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1i8;
    let three = Int::from(3);
    let five = Int::from(5);
    let eight = Int::from(8);
    let four = Int::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

// ---------------------------------------------------------------------------
// prime field elements

/// An element of `F_p`. Binary operations check that both sides share `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElt {
    r: u64,
    p: u64,
}

impl FpElt {
    pub fn new(v: i64, p: u64) -> Self {
        FpElt {
            r: v.rem_euclid(p as i64) as u64,
            p,
        }
    }

    pub fn from_int(v: &Int, p: u64) -> Self {
        let r = v.mod_floor(&Int::from(p)).to_u64().unwrap();
        FpElt { r, p }
    }

    pub fn residue(self) -> u64 {
        self.r
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.r == 0
    }

    pub fn inv(self) -> Option<Self> {
        (self.r != 0).then(|| FpElt {
            r: invmod(self.r, self.p),
            p: self.p,
        })
    }

    pub fn pow(self, e: u64) -> Self {
        FpElt {
            r: powmod(self.r, e, self.p),
            p: self.p,
        }
    }

    fn same(self, o: Self) {
        assert_eq!(self.p, o.p, "F_p elements with different moduli");
    }
}

impl Add for FpElt {
    type Output = FpElt;
    fn add(self, o: Self) -> Self {
        self.same(o);
        let s = self.r + o.r;
        FpElt {
            r: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
}

impl Sub for FpElt {
    type Output = FpElt;
    fn sub(self, o: Self) -> Self {
        self.same(o);
        FpElt {
            r: if self.r >= o.r {
                self.r - o.r
            } else {
                self.r + self.p - o.r
            },
            p: self.p,
        }
    }
}

impl Mul for FpElt {
    type Output = FpElt;
    fn mul(self, o: Self) -> Self {
        self.same(o);
        FpElt {
            r: mulmod(self.r, o.r, self.p),
            p: self.p,
        }
    }
}

impl Neg for FpElt {
    type Output = FpElt;
    fn neg(self) -> Self {
        FpElt {
            r: if self.r == 0 { 0 } else { self.p - self.r },
            p: self.p,
        }
    }
}

// ---------------------------------------------------------------------------
// quadratic elements

/// `a + b*sqrt(d)` with rational `a, b` and squarefree `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElt {
    pub d: Int,
    pub a: Rat,
    pub b: Rat,
}

impl QuadElt {
    pub fn new(d: Int, a: Rat, b: Rat) -> Self {
        QuadElt { d, a, b }
    }

    pub fn from_rat(d: &Int, a: Rat) -> Self {
        QuadElt {
            d: d.clone(),
            a,
            b: Rat::zero(),
        }
    }

    pub fn zero(d: &Int) -> Self {
        Self::from_rat(d, Rat::zero())
    }

    pub fn one(d: &Int) -> Self {
        Self::from_rat(d, Rat::one())
    }

    pub fn root(d: &Int) -> Self {
        QuadElt {
            d: d.clone(),
            a: Rat::zero(),
            b: Rat::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadElt {
            d: self.d.clone(),
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_integer(self.d.clone()) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rat {
        &self.a * Rat::from_integer(Int::from(2))
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.d != o.d {
            return Err(Error::MixedQuadratic(self.d.to_string(), o.d.to_string()));
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(QuadElt {
            d: self.d.clone(),
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(QuadElt {
            d: self.d.clone(),
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let d = Rat::from_integer(self.d.clone());
        Ok(QuadElt {
            d: self.d.clone(),
            a: &self.a * &o.a + d * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        })
    }

    pub fn scale(&self, r: &Rat) -> Self {
        QuadElt {
            d: self.d.clone(),
            a: &self.a * r,
            b: &self.b * r,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput("inverse of zero quadratic element"));
        }
        let n = self.norm();
        Ok(self.conj().scale(&(Rat::one() / n)))
    }
}

impl Add for &QuadElt {
    type Output = QuadElt;
    fn add(self, o: &QuadElt) -> QuadElt {
        self.checked_add(o).expect("quadratic ring mismatch")
    }
}

impl Sub for &QuadElt {
    type Output = QuadElt;
    fn sub(self, o: &QuadElt) -> QuadElt {
        self.checked_sub(o).expect("quadratic ring mismatch")
    }
}

impl Mul for &QuadElt {
    type Output = QuadElt;
    fn mul(self, o: &QuadElt) -> QuadElt {
        self.checked_mul(o).expect("quadratic ring mismatch")
    }
}

impl Neg for &QuadElt {
    type Output = QuadElt;
    fn neg(self) -> QuadElt {
        QuadElt {
            d: self.d.clone(),
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

impl fmt::Display for QuadElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.d);
        }
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

/// Renders a rational as a product of prime powers, e.g. `-17^3/2^7`.
pub fn format_factored(x: &Rat) -> String {
    let part = |n: &Int| -> String {
        if n.is_one() {
            return "1".into();
        }
        let f = factor_int(n);
        let mut s: Vec<String> = f
            .factors
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        if let Some(c) = f.cofactor {
            s.push(c.to_string());
        }
        s.join("*")
    };
    let sign = if x.is_negative() { "-" } else { "" };
    if x.is_zero() {
        return "0".into();
    }
    let n = part(&x.numer().abs());
    if x.denom().is_one() {
        format!("{sign}{n}")
    } else {
        format!("{sign}{n}/{}", part(x.denom()))
    }
}


/// Serde adapters writing `Int`/`Rat` as decimal strings (`"-11/64"`), so
/// JSON never rounds them.
pub mod serde_str {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}
