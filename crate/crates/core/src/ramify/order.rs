//! p-maximal orders: Dedekind's criterion and Round 2 enlargement.
//!
//! The order is carried only through its structure constants modulo a
//! fixed power `p^N`. Each enlargement divides by `p` twice, so `N` is
//! chosen from `ord_p(disc)` to survive the worst-case number of steps.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::{left_kernel, mat_mul, mul_mod};
use crate::error::{Error, Result};
use crate::exactnum::{split_val, val_int, Int};
use crate::polyalg::{FpPoly, IntPoly};

/// A monic model over `Z_(p)` of the field defined by `f`.
#[derive(Debug, Clone)]
pub struct LocalModel {
    pub p: u64,
    /// Scaling exponent: the model's root is `p^e` times a root of `f`.
    pub shift: u32,
    /// `ord_p` of the model's discriminant.
    pub vdisc: i64,
    /// Coefficients (ascending, monic) reduced into `[0, p^prec)`.
    pub coeffs: Vec<BigInt>,
    pub prec: u32,
}

impl LocalModel {
    /// Scales the root by the least power of `p` that makes the monic
    /// associate of `f` integral at `p`. `vdisc_f` is `ord_p(disc f)`.
    pub fn new(f: &IntPoly, p: u64, vdisc_f: i64) -> Result<Self> {
        let n = f.deg();
        if n == 0 {
            return Err(Error::Precondition("constant polynomial".into()));
        }
        let pb = Int::from(p);
        let (vl, unit_l) = split_val(&f.lc(), &pb);
        let vl = vl as i64;
        let mut e: i64 = 0;
        for i in 0..n {
            let c = f.coeff(i);
            if c.is_zero() {
                continue;
            }
            let need = vl - val_int(&c, p) as i64;
            if need > 0 {
                let k = (n - i) as i64;
                e = e.max((need + k - 1) / k);
            }
        }
        let n64 = n as i64;
        let vdisc = vdisc_f - (2 * n64 - 2) * vl + n64 * (n64 - 1) * e;
        if vdisc < 0 {
            return Err(Error::Precondition(format!(
                "ord_{p} of the discriminant came out negative"
            )));
        }
        let prec = (vdisc + 4) as u32;
        let modulus = pb.pow(prec);
        let inv_l = unit_l
            .mod_floor(&modulus)
            .modinv(&modulus)
            .ok_or_else(|| Error::Precondition("leading coefficient unit not invertible".into()))?;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        for (i, slot) in coeffs.iter_mut().enumerate().take(n) {
            let c = f.coeff(i);
            if c.is_zero() {
                continue;
            }
            let (vi, ui) = split_val(&c, &pb);
            let shift = (n - i) as i64 * e + vi as i64 - vl;
            if shift as u32 >= prec {
                continue;
            }
            let v = pb.pow(shift as u32) * ui * &inv_l;
            *slot = v.mod_floor(&modulus);
        }
        Ok(LocalModel {
            p,
            shift: e as u32,
            vdisc,
            coeffs,
            prec,
        })
    }
}

fn fp_radical(f: &FpPoly) -> FpPoly {
    let f = f.monic();
    if f.deg() == 0 {
        return f;
    }
    let d = f.derivative();
    if d.is_zero() {
        // f(x) = g(x^p) = g(x)^p over F_p
        let p = f.modulus() as usize;
        let root: Vec<u64> = f.coeffs().iter().step_by(p).copied().collect();
        return fp_radical(&FpPoly::new(f.modulus(), root));
    }
    let c = f.gcd(&d);
    let w = f.divrem(&c).0;
    if c.deg() == 0 {
        return w;
    }
    let r = fp_radical(&c);
    let g = w.gcd(&r);
    w.mul(&r).divrem(&g).0.monic()
}

/// Dedekind's test on a monic model with coefficients known mod `p^2`.
fn dedekind_local(h: &[BigInt], p: u64) -> bool {
    let pb = Int::from(p);
    let p2 = &pb * &pb;
    let fbar = FpPoly::new(
        p,
        h.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    );
    let g = fp_radical(&fbar);
    let hq = fbar.divrem(&g).0;
    let lift = |q: &FpPoly| IntPoly::new(q.coeffs().iter().map(|&c| Int::from(c)).collect());
    let gh = &lift(&g) * &lift(&hq);
    let n = h.len();
    let mut fcoef = Vec::with_capacity(n);
    for i in 0..n {
        let diff = (gh.coeff(i) - &h[i]).mod_floor(&p2);
        debug_assert!((&diff % &pb).is_zero());
        fcoef.push((diff / &pb).to_u64().unwrap());
    }
    let big_f = FpPoly::new(p, fcoef);
    let d = big_f.gcd(&g).gcd(&hq);
    d.deg() == 0 && !d.is_zero()
}

/// Dedekind's criterion for `Z[x]/f` after the standard monicization
/// `a_n^{n-1} f(x / a_n)`.
pub fn dedekind_maximal(f: &IntPoly, p: u64) -> Result<bool> {
    if f.deg() == 0 {
        return Err(Error::Precondition("constant polynomial".into()));
    }
    if !f.is_squarefree() {
        return Err(Error::Precondition("polynomial is not squarefree".into()));
    }
    let m = f.monicize();
    Ok(dedekind_local(m.coeffs(), p))
}

/// Residues modulo a fixed `p^N`.
trait Zmod: Sync {
    type E: Clone + Send + Sync;
    fn zero(&self) -> Self::E;
    fn reduce_big(&self, v: &BigInt) -> Self::E;
    fn reduce_u64(&self, v: u64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul_u64(&self, a: &Self::E, k: u64) -> Self::E;
    /// Exact division of the representative by `p`.
    fn div_p(&self, a: &Self::E) -> Self::E;
    fn residue(&self, a: &Self::E, q: u64) -> u64;
    fn is_zero(&self, a: &Self::E) -> bool;
}

struct Small {
    p: u128,
    m: u128,
}

impl Zmod for Small {
    type E = u128;
    fn zero(&self) -> u128 {
        0
    }
    fn reduce_big(&self, v: &BigInt) -> u128 {
        v.mod_floor(&BigInt::from(self.m)).to_u128().unwrap()
    }
    fn reduce_u64(&self, v: u64) -> u128 {
        v as u128 % self.m
    }
    fn add(&self, a: &u128, b: &u128) -> u128 {
        (a + b) % self.m
    }
    fn sub(&self, a: &u128, b: &u128) -> u128 {
        (a + self.m - b) % self.m
    }
    fn mul(&self, a: &u128, b: &u128) -> u128 {
        a * b % self.m
    }
    fn mul_u64(&self, a: &u128, k: u64) -> u128 {
        a * (k as u128 % self.m) % self.m
    }
    fn div_p(&self, a: &u128) -> u128 {
        debug_assert_eq!(a % self.p, 0);
        a / self.p
    }
    fn residue(&self, a: &u128, q: u64) -> u64 {
        (a % q as u128) as u64
    }
    fn is_zero(&self, a: &u128) -> bool {
        *a == 0
    }
}

struct Big {
    p: BigUint,
    m: BigUint,
}

impl Zmod for Big {
    type E = BigUint;
    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn reduce_big(&self, v: &BigInt) -> BigUint {
        let r = v.mod_floor(&BigInt::from_biguint(Sign::Plus, self.m.clone()));
        r.magnitude().clone()
    }
    fn reduce_u64(&self, v: u64) -> BigUint {
        BigUint::from(v) % &self.m
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if s >= self.m {
            s - &self.m
        } else {
            s
        }
    }
    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            &self.m - b + a
        }
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a.is_zero() || b.is_zero() {
            return BigUint::zero();
        }
        (a * b) % &self.m
    }
    fn mul_u64(&self, a: &BigUint, k: u64) -> BigUint {
        (a * k) % &self.m
    }
    fn div_p(&self, a: &BigUint) -> BigUint {
        debug_assert!((a % &self.p).is_zero());
        a / &self.p
    }
    fn residue(&self, a: &BigUint, q: u64) -> u64 {
        (a % q).to_u64().unwrap()
    }
    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }
}

/// Outcome of the enlargement loop at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalIndex {
    pub p: u64,
    /// `ord_p` of the discriminant of the monic model.
    pub model_vdisc: i64,
    /// `ord_p [O_K : Z[theta]]` for the model's root `theta`.
    pub index: i64,
    pub steps: u32,
    pub dedekind: bool,
}

impl LocalIndex {
    pub fn field_valuation(&self) -> i64 {
        self.model_vdisc - 2 * self.index
    }
}

/// Runs Dedekind's test and, if needed, Round 2 on the local model.
pub fn local_index(model: &LocalModel) -> Result<LocalIndex> {
    let p = model.p;
    if p >= 1 << 32 {
        return Err(Error::Unsupported(format!(
            "Round 2 at p = {p} (needs p < 2^32)"
        )));
    }
    let done = |index, steps, dedekind| LocalIndex {
        p,
        model_vdisc: model.vdisc,
        index,
        steps,
        dedekind,
    };
    if model.vdisc < 2 {
        return Ok(done(0, 0, true));
    }
    if dedekind_local(&model.coeffs, p) {
        return Ok(done(0, 0, true));
    }
    let bits = (model.prec as f64 * (p as f64).log2()).ceil() as u64;
    let (index, steps) = if bits <= 62 {
        let m = (p as u128).pow(model.prec);
        round2(&Small { p: p as u128, m }, model)?
    } else {
        let pb = BigUint::from(p);
        let m = pb.pow(model.prec);
        round2(&Big { p: pb, m }, model)?
    };
    Ok(done(index, steps, false))
}

type Table<E> = Vec<Vec<Vec<E>>>;

fn reduce_table<R: Zmod>(r: &R, c: &Table<R::E>, q: u64) -> Vec<Vec<Vec<u64>>> {
    c.iter()
        .map(|ck| {
            ck.iter()
                .map(|row| row.iter().map(|x| r.residue(x, q)).collect())
                .collect()
        })
        .collect()
}

/// `x * y` from structure constants reduced mod `q`.
fn mult_small(c: &[Vec<Vec<u64>>], x: &[u64], y: &[u64], q: u64) -> Vec<u64> {
    let n = x.len();
    let mut acc = vec![0u128; n];
    for (k, &xk) in x.iter().enumerate() {
        if xk == 0 {
            continue;
        }
        for (l, &yl) in y.iter().enumerate() {
            if yl == 0 {
                continue;
            }
            let s = mul_mod(xk, yl, q) as u128;
            for (a, &v) in acc.iter_mut().zip(&c[k][l]) {
                *a += s * v as u128;
            }
        }
        for a in acc.iter_mut() {
            *a %= q as u128;
        }
    }
    acc.into_iter().map(|v| (v % q as u128) as u64).collect()
}

fn pow_small(c: &[Vec<Vec<u64>>], x: &[u64], mut e: u64, q: u64) -> Vec<u64> {
    let mut base = x.to_vec();
    let mut out: Option<Vec<u64>> = None;
    while e > 0 {
        if e & 1 == 1 {
            out = Some(match out {
                None => base.clone(),
                Some(o) => mult_small(c, &o, &base, q),
            });
        }
        e >>= 1;
        if e > 0 {
            base = mult_small(c, &base, &base, q);
        }
    }
    out.expect("positive exponent")
}

/// Power-basis structure constants of the model, mod `p^N`.
fn power_basis_table<R: Zmod>(r: &R, model: &LocalModel) -> Table<R::E> {
    let n = model.coeffs.len() - 1;
    let h: Vec<R::E> = model.coeffs.iter().map(|c| r.reduce_big(c)).collect();
    // pw[e] = x^e mod h
    let mut pw: Vec<Vec<R::E>> = Vec::with_capacity(2 * n - 1);
    let mut cur = vec![r.zero(); n];
    cur[0] = r.reduce_u64(1);
    for _ in 0..(2 * n - 1) {
        pw.push(cur.clone());
        let top = cur[n - 1].clone();
        let mut next = vec![r.zero(); n];
        for i in (1..n).rev() {
            next[i] = cur[i - 1].clone();
        }
        if !r.is_zero(&top) {
            for (i, slot) in next.iter_mut().enumerate() {
                *slot = r.sub(slot, &r.mul(&top, &h[i]));
            }
        }
        cur = next;
    }
    (0..n)
        .map(|k| (0..n).map(|l| pw[k + l].clone()).collect())
        .collect()
}

/// Returns `(ord_p index, steps)`.
fn round2<R: Zmod>(r: &R, model: &LocalModel) -> Result<(i64, u32)> {
    let p = model.p;
    let n = model.coeffs.len() - 1;
    let mut c = power_basis_table(r, model);
    let cap = model.vdisc / 2;
    let mut index: i64 = 0;
    let mut steps = 0u32;
    // smallest j with p^j >= n
    let mut j = 1u32;
    while (p as u128).pow(j) < n as u128 {
        j += 1;
    }
    loop {
        steps += 1;
        let cp = reduce_table(r, &c, p);
        // radical of O/pO: kernel of x -> x^(p^j)
        let unit = |i: usize| (0..n).map(|k| u64::from(k == i)).collect::<Vec<u64>>();
        let frob: Vec<Vec<u64>> = (0..n).map(|i| pow_small(&cp, &unit(i), p, p)).collect();
        let mut phi = frob.clone();
        for _ in 1..j {
            phi = mat_mul(&phi, &frob, p);
        }
        let (rad, rad_piv) = left_kernel(&phi, p);
        // U = pO + lift(rad), basis row per column, diagonal 1 or p
        let p2 = p * p;
        let mut ubasis: Vec<Vec<u64>> = Vec::with_capacity(n);
        let mut unit_diag = vec![false; n];
        for col in 0..n {
            if let Some(k) = rad_piv.iter().position(|&c| c == col) {
                ubasis.push(rad[k].clone());
                unit_diag[col] = true;
            } else {
                let mut v = vec![0u64; n];
                v[col] = p;
                ubasis.push(v);
            }
        }
        let cq = reduce_table(r, &c, p2);
        // rows: omega_i; columns: U-coordinates of omega_i * u_j mod p
        let mut mrows: Vec<Vec<u64>> = Vec::with_capacity(n);
        for ci in cq.iter() {
            let mut row = Vec::with_capacity(n * n);
            for u in &ubasis {
                let mut w = vec![0u128; n];
                for (l, &ul) in u.iter().enumerate() {
                    if ul == 0 {
                        continue;
                    }
                    for (a, &v) in w.iter_mut().zip(&ci[l]) {
                        *a = (*a + ul as u128 * v as u128) % p2 as u128;
                    }
                }
                let w: Vec<u64> = w.into_iter().map(|v| v as u64).collect();
                row.extend(solve_small(&ubasis, &unit_diag, &w, p));
            }
            mrows.push(row);
        }
        let (ker, ker_piv) = left_kernel(&mrows, p);
        let s = ker.len();
        if s == 0 {
            return Ok((index, steps));
        }
        index += s as i64;
        if index > cap {
            return Err(Error::Precondition(format!(
                "Round 2 at p = {p} exceeded the index bound {cap}; input is not separable?"
            )));
        }
        c = enlarge(r, &c, &ker, &ker_piv, p);
    }
}

/// U-coordinates mod `p` of `w` (given mod `p^2`) for a triangular basis
/// whose non-unit rows are `p * e_c`.
fn solve_small(basis: &[Vec<u64>], unit_diag: &[bool], w: &[u64], p: u64) -> Vec<u64> {
    let n = w.len();
    let q = p * p;
    let mut y = vec![0u64; n];
    for c in 0..n {
        let mut v = w[c] as u128;
        for r in 0..c {
            if unit_diag[r] && basis[r][c] != 0 && y[r] != 0 {
                v = (v + q as u128 - (y[r] as u128 * basis[r][c] as u128) % q as u128) % q as u128;
            }
        }
        let v = v as u64;
        y[c] = if unit_diag[c] {
            v
        } else {
            debug_assert_eq!(v % p, 0);
            v / p
        };
    }
    y.into_iter().map(|v| v % p).collect()
}

/// Structure constants of `(1/p)(pO + lift(ker))`.
fn enlarge<R: Zmod>(
    r: &R,
    c: &Table<R::E>,
    ker: &[Vec<u64>],
    piv: &[usize],
    p: u64,
) -> Table<R::E> {
    let n = c.len();
    // which rows of the new basis come from the kernel
    let mut krow: Vec<Option<usize>> = vec![None; n];
    for (k, &col) in piv.iter().enumerate() {
        krow[col] = Some(k);
    }
    // T_a[l] = alpha_a * omega_l for kernel rows a
    let t: Vec<Option<Vec<Vec<R::E>>>> = (0..n)
        .map(|a| {
            krow[a].map(|k| {
                let coeffs = &ker[k];
                (0..n)
                    .map(|l| {
                        let mut acc = vec![r.zero(); n];
                        for (kk, &x) in coeffs.iter().enumerate() {
                            if x == 0 {
                                continue;
                            }
                            for (a, v) in acc.iter_mut().zip(&c[kk][l]) {
                                *a = r.add(a, &r.mul_u64(v, x));
                            }
                        }
                        acc
                    })
                    .collect()
            })
        })
        .collect();
    let solve = |w: Vec<R::E>| -> Vec<R::E> {
        let w: Vec<R::E> = w.iter().map(|x| r.div_p(x)).collect();
        let mut z: Vec<R::E> = vec![r.zero(); n];
        for col in 0..n {
            let mut v = w[col].clone();
            for row in 0..col {
                if let Some(k) = krow[row] {
                    let a = ker[k][col];
                    if a != 0 {
                        v = r.sub(&v, &r.mul_u64(&z[row], a));
                    }
                }
            }
            z[col] = if krow[col].is_some() { v } else { r.div_p(&v) };
        }
        z
    };
    let mut out: Table<R::E> = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in a..n {
            let w: Vec<R::E> = match (&t[a], &t[b]) {
                (None, None) => c[a][b].iter().map(|x| r.mul_u64(x, p * p)).collect(),
                (Some(ta), None) => ta[b].iter().map(|x| r.mul_u64(x, p)).collect(),
                (None, Some(tb)) => tb[a].iter().map(|x| r.mul_u64(x, p)).collect(),
                (Some(ta), Some(_)) => {
                    let kb = &ker[krow[b].unwrap()];
                    let mut acc = vec![r.zero(); n];
                    for (l, &x) in kb.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for (s, v) in acc.iter_mut().zip(&ta[l]) {
                            *s = r.add(s, &r.mul_u64(v, x));
                        }
                    }
                    acc
                }
            };
            let z = solve(w);
            out[b][a] = z.clone();
            out[a][b] = z;
        }
    }
    out
}

/// Caches the exact discriminant of an irreducible polynomial so that
/// several primes can be examined without recomputing it.
#[derive(Debug, Clone)]
pub struct FieldAnalyzer {
    f: IntPoly,
    disc: Int,
}

impl FieldAnalyzer {
    /// Checks irreducibility over `Q` first.
    pub fn new(f: &IntPoly) -> Result<Self> {
        let f = f.primitive_part();
        if f.deg() == 0 {
            return Err(Error::Precondition("constant polynomial".into()));
        }
        let fac = crate::polyalg::factor_rational(&f)?;
        if fac.len() > 1 || fac.iter().any(|(_, e)| *e > 1) {
            let mut degs: Vec<usize> = fac
                .iter()
                .flat_map(|(g, e)| std::iter::repeat_n(g.deg(), *e as usize))
                .collect();
            degs.sort_unstable_by(|a, b| b.cmp(a));
            return Err(Error::Reducible(degs));
        }
        Ok(Self::trusted(f))
    }

    /// Skips the irreducibility check (for callers that already ran it).
    pub fn trusted(f: IntPoly) -> Self {
        let disc = f.discriminant();
        FieldAnalyzer { f, disc }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.f
    }

    pub fn poly_disc(&self) -> &Int {
        &self.disc
    }

    pub fn poly_valuation(&self, p: u64) -> i64 {
        val_int(&self.disc, p) as i64
    }

    pub fn local(&self, p: u64) -> Result<LocalIndex> {
        let model = LocalModel::new(&self.f, p, self.poly_valuation(p))?;
        local_index(&model)
    }

    /// `ord_p` of the field discriminant.
    pub fn valuation(&self, p: u64) -> Result<i64> {
        let v = self.poly_valuation(p);
        if v < 2 && self.f.lc().is_one() {
            return Ok(v);
        }
        Ok(self.local(p)?.field_valuation())
    }

    /// Sign of the field discriminant, `(-1)^{r_2}`.
    pub fn sign(&self) -> i8 {
        if self.disc.is_negative() {
            -1
        } else {
            1
        }
    }
}

/// `ord_p` of the discriminant of `Q[x]/f`, for irreducible `f`.
pub fn field_disc_valuation(f: &IntPoly, p: u64) -> Result<i64> {
    FieldAnalyzer::new(f)?.valuation(p)
}
