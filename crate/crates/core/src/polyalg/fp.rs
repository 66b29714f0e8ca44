use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{invmod, mulmod};
use crate::partition::Partition;

/// Dense polynomial over `F_p`, ascending coefficients in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

#[inline]
fn reduce(acc: u128, p: u64) -> u64 {
    (acc % p as u128) as u64
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_i64(p: u64, c: &[i64]) -> Self {
        Self::new(
            p,
            c.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1 % p] }
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        let inv = invmod(self.lc(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(
            self.p,
            self.c.iter().map(|&x| mulmod(x, k, self.p)).collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|i| {
                    let s = self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0);
                    if s >= p {
                        s - p
                    } else {
                        s
                    }
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0);
                    let b = o.c.get(i).copied().unwrap_or(0);
                    if a >= b {
                        a - b
                    } else {
                        a + p - b
                    }
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let n = self.c.len() + o.c.len() - 1;
        let mut acc = vec![0u128; n];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] += a as u128 * b as u128;
            }
        }
        Self::new(self.p, acc.into_iter().map(|x| reduce(x, self.p)).collect())
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mulmod(a, i as u64 % p, p))
                .collect(),
        )
    }

    pub fn divrem(&self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.deg() < b.deg() || self.is_zero() {
            return (Self::zero(p), self.clone());
        }
        let inv = invmod(b.lc(), p);
        let db = b.deg();
        let mut r = self.c.clone();
        let mut q = vec![0u64; self.deg() - db + 1];
        for k in (db..r.len()).rev() {
            let coef = mulmod(r[k], inv, p);
            if coef == 0 {
                continue;
            }
            q[k - db] = coef;
            for (i, &bi) in b.c.iter().enumerate() {
                let t = mulmod(coef, bi, p);
                let idx = i + k - db;
                r[idx] = if r[idx] >= t {
                    r[idx] - t
                } else {
                    r[idx] + p - t
                };
            }
        }
        r.truncate(db);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.divrem(b).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = invmod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut r = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            r = r.mulmod(&r, m);
            if e.bit(i) {
                r = r.mulmod(&base, m);
            }
        }
        r
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// `[(g_d, d)]` with `g_d` the product of the degree-`d` irreducibles.
    pub fn ddf(&self) -> Vec<(FpPoly, usize)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        let frob = Frobenius::new(f.c.clone(), f.p);
        let mut g = f.clone();
        let mut h = frob.x_pow_p();
        let x = Self::x(f.p);
        let mut d = 1;
        while g.deg() >= 2 * d {
            let hh = Self::new(f.p, h.clone());
            let fac = hh.sub(&x).gcd(&g);
            if fac.deg() > 0 {
                g = g.divrem(&fac).0;
                out.push((fac, d));
            }
            d += 1;
            h = frob.apply(&h);
        }
        if g.deg() > 0 {
            let dg = g.deg();
            out.push((g, dg));
        }
        out
    }

    /// Cantor-Zassenhaus equal-degree split of a product of degree-`d`
    /// irreducibles (monic, squarefree).
    pub fn edf(&self, d: usize, seed: u64) -> Vec<FpPoly> {
        let f = self.monic();
        if f.deg() == d {
            return vec![f];
        }
        if f.deg() == 0 {
            return Vec::new();
        }
        let p = f.p;
        let mut rng = seed ^ 0x2545_f491_4f6c_dd1d ^ (p.wrapping_mul(0x9e37_79b9));
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        let n = f.deg();
        let exp = if p == 2 {
            BigUint::zero()
        } else {
            (num_traits::pow(BigUint::from(p), d) - BigUint::one()) / BigUint::from(2u32)
        };
        loop {
            let a = Self::new(p, (0..n).map(|_| next() % p).collect());
            if a.deg() == 0 {
                continue;
            }
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^(2^(d-1)) over F_(2^d)
                let mut acc = a.rem(&f);
                let mut cur = acc.clone();
                for _ in 1..d {
                    cur = cur.mulmod(&cur, &f);
                    acc = acc.add(&cur);
                }
                acc
            } else {
                a.powmod(&exp, &f).sub(&Self::one(p))
            };
            let g = b.gcd(&f);
            if g.deg() > 0 && g.deg() < n {
                let h = f.divrem(&g).0;
                let mut out = g.edf(d, next());
                out.extend(h.edf(d, next()));
                return out;
            }
        }
    }

    /// Irreducible monic factors of a squarefree polynomial, with its leading
    /// coefficient returned separately.
    pub fn factor_squarefree(&self) -> (u64, Vec<FpPoly>) {
        let lc = self.lc();
        let mut out = Vec::new();
        for (g, d) in self.ddf() {
            out.extend(g.edf(d, d as u64));
        }
        out.sort_by(|a, b| (a.deg(), &a.c).cmp(&(b.deg(), &b.c)));
        (lc, out)
    }
}

/// Frobenius on `F_p[x]/(f)` for a monic `f`, stored as the matrix of
/// `x^(i p) mod f`, plus a precomputed table for reducing products.
pub struct Frobenius {
    p: u64,
    n: usize,
    f: Vec<u64>,
    // red[k] = x^(n+k) mod f, k < n-1
    red: Vec<Vec<u64>>,
    rows: Vec<Vec<u64>>,
}

impl Frobenius {
    pub fn new(f: Vec<u64>, p: u64) -> Self {
        let n = f.len() - 1;
        debug_assert_eq!(f[n], 1);
        let mut red: Vec<Vec<u64>> = Vec::with_capacity(n.saturating_sub(1));
        if n >= 1 {
            // x^n = -sum f_i x^i
            let mut cur: Vec<u64> = f[..n]
                .iter()
                .map(|&a| if a == 0 { 0 } else { p - a })
                .collect();
            for _ in 0..n.saturating_sub(1) {
                red.push(cur.clone());
                // multiply by x
                let top = cur[n - 1];
                let mut next = vec![0u64; n];
                next[1..n].copy_from_slice(&cur[..n - 1]);
                if top != 0 {
                    for i in 0..n {
                        let t = mulmod(top, red[0][i], p);
                        next[i] = (next[i] + t) % p;
                    }
                }
                cur = next;
            }
        }
        let mut fr = Frobenius {
            p,
            n,
            f,
            red,
            rows: Vec::new(),
        };
        fr.build_rows();
        fr
    }

    fn mulmod(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.n;
        let p = self.p;
        let mut prod = vec![0u128; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] += x as u128 * y as u128;
            }
        }
        let hi: Vec<u64> = prod[n..].iter().map(|&v| reduce(v, p)).collect();
        let mut out: Vec<u128> = prod[..n].to_vec();
        for (k, &h) in hi.iter().enumerate() {
            if h == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(&self.red[k]) {
                *o += h as u128 * r as u128;
            }
        }
        out.into_iter().map(|v| reduce(v, p)).collect()
    }

    fn x_times(&self, a: &[u64]) -> Vec<u64> {
        let n = self.n;
        let p = self.p;
        let top = a[n - 1];
        let mut out = vec![0u64; n];
        out[1..n].copy_from_slice(&a[..n - 1]);
        if top != 0 {
            for (o, &r) in out.iter_mut().zip(&self.red[0]) {
                *o = (*o + mulmod(top, r, p)) % p;
            }
        }
        out
    }

    fn build_rows(&mut self) {
        let n = self.n;
        if n <= 1 {
            self.rows = vec![vec![1 % self.p; n.max(1)]];
            return;
        }
        // x^p by left-to-right binary powering
        let mut acc = vec![0u64; n];
        acc[0] = 1;
        let p = self.p;
        for i in (0..64 - p.leading_zeros()).rev() {
            acc = self.mulmod(&acc, &acc);
            if (p >> i) & 1 == 1 {
                acc = self.x_times(&acc);
            }
        }
        let mut rows = Vec::with_capacity(n);
        let mut cur = vec![0u64; n];
        cur[0] = 1;
        rows.push(cur.clone());
        for _ in 1..n {
            cur = self.mulmod(&cur, &acc);
            rows.push(cur.clone());
        }
        self.rows = rows;
    }

    pub fn x_pow_p(&self) -> Vec<u64> {
        if self.n <= 1 {
            return vec![0];
        }
        self.rows[1].clone()
    }

    /// `h -> h^p mod f`.
    pub fn apply(&self, h: &[u64]) -> Vec<u64> {
        let n = self.n;
        let mut acc = vec![0u128; n];
        for (i, &hi) in h.iter().enumerate() {
            if hi == 0 {
                continue;
            }
            for (a, &r) in acc.iter_mut().zip(&self.rows[i]) {
                *a += hi as u128 * r as u128;
            }
        }
        acc.into_iter().map(|v| reduce(v, self.p)).collect()
    }

    pub fn modulus_poly(&self) -> &[u64] {
        &self.f
    }
}

/// Factorization pattern of a monic polynomial known to be squarefree mod p.
pub fn squarefree_partition(f: &FpPoly) -> Partition {
    let mut parts = Vec::new();
    for (g, d) in f.ddf() {
        for _ in 0..g.deg() / d {
            parts.push(d as u32);
        }
    }
    Partition::new(parts)
}

/// Pattern of `f mod p`, or an error when `p | lc` or `f mod p` is not
/// squarefree.
pub fn fp_partition(f: &FpPoly, expected_deg: usize) -> Result<Partition> {
    if f.deg() != expected_deg || f.is_zero() {
        return Err(Error::Precondition(format!(
            "prime {} divides the leading coefficient",
            f.p
        )));
    }
    if !f.is_squarefree() {
        return Err(Error::Precondition(format!("not squarefree mod {}", f.p)));
    }
    Ok(squarefree_partition(&f.monic()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_gcd() {
        let p = 7;
        let a = FpPoly::from_i64(p, &[-1, 0, 1]);
        let b = FpPoly::from_i64(p, &[-1, 1]);
        let (q, r) = a.divrem(&b);
        assert!(r.is_zero());
        assert_eq!(q, FpPoly::from_i64(p, &[1, 1]));
        let (g, s, t) = a.xgcd(&FpPoly::from_i64(p, &[2, 1]));
        assert!(g.is_one());
        assert!(s
            .mul(&a)
            .add(&t.mul(&FpPoly::from_i64(p, &[2, 1])))
            .is_one());
    }

    #[test]
    fn factors_of_x2_minus_1() {
        let f = FpPoly::from_i64(7, &[-1, 0, 1]);
        let (lc, fs) = f.factor_squarefree();
        assert_eq!(lc, 1);
        assert_eq!(
            fs,
            vec![FpPoly::from_i64(7, &[1, 1]), FpPoly::from_i64(7, &[-1, 1])]
        );
    }

    #[test]
    fn ddf_counts_match_edf() {
        // x^8 - x over F_2 is the product of all irreducibles of degree 1 and 3
        let mut c = vec![0i64; 9];
        c[8] = 1;
        c[1] = -1;
        let f = FpPoly::from_i64(2, &c);
        let f = f.divrem(&FpPoly::x(2)).0; // squarefree: x^7 - 1
        let part = squarefree_partition(&f);
        assert_eq!(part.to_string(), "3^2 1");
        let (_, fs) = f.factor_squarefree();
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn x2_plus_1_mod_5() {
        let f = FpPoly::from_i64(5, &[1, 0, 1]);
        assert_eq!(fp_partition(&f, 2).unwrap().to_string(), "1^2");
        let f = FpPoly::from_i64(7, &[1, 0, 1]);
        assert_eq!(fp_partition(&f, 2).unwrap().to_string(), "2");
    }
}
