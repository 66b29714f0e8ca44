//! Specialization sets `T_{m0,m1,minf}(Z^S)`: rational parameters whose
//! fibers ramify only inside `S`, found as S-unit ABC solutions
//! `a x^m0 + b y^m1 + c z^minf = 0`.
//!
//! Also here: which "arm" of `P^1(Q_p)` a parameter sits on, and the tame
//! discriminant exponent that position predicts.

use std::fmt;
use std::str::FromStr;

use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covers::{self, CoverId, ParamKind};
use crate::error::{Error, Result};
use crate::exactnum::{
    exact_root, factor_int_with, ord_p, parse_int_expr, rat_sqrt, split_val, FactorBudget, Int, Rat,
};

/// Cusp orders `(m0, m1, minf)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triple(pub [u32; 3]);

impl Triple {
    pub fn new(m0: u32, m1: u32, minf: u32) -> Self {
        Triple([m0, m1, minf])
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for Triple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<u32> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad triple {s:?}")))
            })
            .collect::<Result<_>>()?;
        match v[..] {
            [a, b, c] if a > 0 && b > 0 && c > 0 => Ok(Triple([a, b, c])),
            _ => Err(Error::Parse(format!(
                "triple needs three positive entries, got {s:?}"
            ))),
        }
    }
}

/// Parses `2,3,11` into a sorted prime list.
pub fn parse_prime_set(s: &str) -> Result<Vec<u64>> {
    let mut v: Vec<u64> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad prime {t:?}")))
        })
        .collect::<Result<_>>()?;
    for &p in &v {
        if !crate::exactnum::is_prime_u64(p) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
    }
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

fn fmt_primes(s: &[u64]) -> String {
    s.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// `a x^m0 + b y^m1 + c z^minf = 0`. `a, b, c` are S-units carrying the
/// whole S-part of their term; `x, y, z` are positive and prime to `S`;
/// the `y` term is positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbcWitness {
    #[serde(with = "crate::exactnum::serde_str")]
    pub a: Int,
    #[serde(with = "crate::exactnum::serde_str")]
    pub x: Int,
    #[serde(with = "crate::exactnum::serde_str")]
    pub b: Int,
    #[serde(with = "crate::exactnum::serde_str")]
    pub y: Int,
    #[serde(with = "crate::exactnum::serde_str")]
    pub c: Int,
    #[serde(with = "crate::exactnum::serde_str")]
    pub z: Int,
}

impl AbcWitness {
    pub fn terms(&self, t: Triple) -> [Int; 3] {
        let [m0, m1, mi] = t.0;
        [
            &self.a * num_traits::pow(self.x.clone(), m0 as usize),
            &self.b * num_traits::pow(self.y.clone(), m1 as usize),
            &self.c * num_traits::pow(self.z.clone(), mi as usize),
        ]
    }

    pub fn sum(&self, t: Triple) -> Int {
        let [u, v, w] = self.terms(t);
        u + v + w
    }

    /// `tau = -a x^m0 / (c z^minf)`.
    pub fn tau(&self, t: Triple) -> Result<Rat> {
        let [u, _, w] = self.terms(t);
        if w.is_zero() {
            return Err(Error::ZeroInput("c z^minf"));
        }
        Ok(Rat::new(-u, w))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecPoint {
    #[serde(with = "crate::exactnum::serde_str")]
    pub tau: Rat,
    pub triple: Triple,
    pub s: Vec<u64>,
    pub witness: AbcWitness,
}

impl SpecPoint {
    /// `max(|num|, den)`, which is also `max(|a x^m0|, |c z^minf|)`.
    pub fn height(&self) -> Int {
        self.tau.numer().abs().max(self.tau.denom().clone())
    }

    /// `tau_num/tau_den  a x b y c z  triple  S`
    pub fn to_line(&self) -> String {
        let w = &self.witness;
        format!(
            "{}/{}  {} {} {} {} {} {}  {}  {}",
            self.tau.numer(),
            self.tau.denom(),
            w.a,
            w.x,
            w.b,
            w.y,
            w.c,
            w.z,
            self.triple,
            fmt_primes(&self.s)
        )
    }

    /// Inverse of [`SpecPoint::to_line`]; the record must recompose.
    pub fn from_line(line: &str) -> Result<Self> {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 9 {
            return Err(Error::Parse(format!("expected 9 fields, got {}", f.len())));
        }
        let tau = crate::exactnum::parse_rat(f[0])?;
        let n: Vec<Int> = f[1..7]
            .iter()
            .map(|t| parse_int_expr(t))
            .collect::<Result<_>>()?;
        let witness = AbcWitness {
            a: n[0].clone(),
            x: n[1].clone(),
            b: n[2].clone(),
            y: n[3].clone(),
            c: n[4].clone(),
            z: n[5].clone(),
        };
        let triple: Triple = f[7].parse()?;
        let s = parse_prime_set(f[8])?;
        if !witness.sum(triple).is_zero() || witness.tau(triple)? != tau {
            return Err(Error::Parse(format!("record does not recompose: {line:?}")));
        }
        Ok(SpecPoint {
            tau,
            triple,
            s,
            witness,
        })
    }
}

// ---------------------------------------------------------------------------
// membership

/// Splits `|n|` into its S-part and the rest.
fn s_split(n: &Int, s: &[u64]) -> (Int, Int) {
    let mut rest = n.abs();
    let mut spart = Int::one();
    for &p in s {
        let pb = Int::from(p);
        let (v, r) = split_val(&rest, &pb);
        rest = r;
        spart *= num_traits::pow(pb, v as usize);
    }
    (spart, rest)
}

/// Why a parameter is not in the set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// Cusp index: 0, 1 or 2 for `0, 1, inf`.
    pub cusp: usize,
    /// A prime outside `S` whose valuation is not a multiple of `m_k`, when
    /// one was found by bounded factoring.
    pub prime: Option<String>,
    pub valuation: Option<u32>,
    /// The S-free part that is not a perfect `m_k`-th power.
    pub residue: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<AbcWitness>,
    pub failures: Vec<Failure>,
}

/// Decides `tau in T_{m0,m1,minf}(Z^S)`.
///
/// With `tau = n/d` in lowest terms, the S-free parts of `|n|`, `|n - d|`
/// and `d` must be perfect `m0`-, `m1`- and `minf`-th powers. That is
/// exactly the valuation condition at every prime outside `S`, and needs no
/// factoring, so the answer is never indeterminate. Offending primes are
/// reported when cheap factoring finds them.
pub fn validate_membership(tau: &Rat, t: Triple, s: &[u64]) -> Result<Membership> {
    if tau.is_zero() || tau.is_one() {
        return Err(Error::Degenerate(format!("{tau} is a cusp")));
    }
    let n = tau.numer().clone();
    let d = tau.denom().clone();
    let w = &n - &d;
    let vals = [&n, &w, &d];
    let mut roots = Vec::with_capacity(3);
    let mut failures = Vec::new();
    for (k, v) in vals.iter().enumerate() {
        let (spart, rest) = s_split(v, s);
        match exact_root(&rest, t.0[k]) {
            Some(r) => roots.push((spart, r)),
            None => {
                let budget = FactorBudget {
                    trial_bound: 100_000,
                    rho_iterations: 1 << 14,
                };
                let fac = factor_int_with(&rest, budget);
                let bad = fac.factors.iter().find(|(_, e)| e % t.0[k] != 0);
                failures.push(Failure {
                    cusp: k,
                    prime: bad.map(|(p, _)| p.to_string()),
                    valuation: bad.map(|(_, e)| *e),
                    residue: rest.to_string(),
                });
            }
        }
    }
    if !failures.is_empty() {
        return Ok(Membership {
            member: false,
            witness: None,
            failures,
        });
    }
    // n - w - d = 0, with a x^m0 = n, b y^m1 = -w, c z^minf = -d
    let sg = |v: &Int| {
        if v.is_negative() {
            -Int::one()
        } else {
            Int::one()
        }
    };
    let mut a = sg(&n) * &roots[0].0;
    let mut b = -sg(&w) * &roots[1].0;
    let mut c = -roots[2].0.clone();
    if b.is_negative() {
        a = -a;
        b = -b;
        c = -c;
    }
    let witness = AbcWitness {
        a,
        x: roots[0].1.clone(),
        b,
        y: roots[1].1.clone(),
        c,
        z: roots[2].1.clone(),
    };
    debug_assert!(witness.sum(t).is_zero());
    Ok(Membership {
        member: true,
        witness: Some(witness),
        failures,
    })
}

/// Membership as a [`SpecPoint`], or `None` for non-members.
pub fn spec_point(tau: &Rat, t: Triple, s: &[u64]) -> Result<Option<SpecPoint>> {
    let m = validate_membership(tau, t, s)?;
    Ok(m.witness.map(|witness| SpecPoint {
        tau: tau.clone(),
        triple: t,
        s: s.to_vec(),
        witness,
    }))
}

// ---------------------------------------------------------------------------
// search

/// Largest supported height bound.
pub const MAX_HEIGHT: u128 = 1_000_000_000_000_000_000_000_000_000_000;

fn s_units_upto(s: &[u64], h: u128) -> Vec<u128> {
    let mut out = vec![1u128];
    for &p in s {
        let p = p as u128;
        let mut next = Vec::new();
        for &u in &out {
            let mut v = u;
            loop {
                next.push(v);
                match v.checked_mul(p) {
                    Some(w) if w <= h => v = w,
                    _ => break,
                }
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

fn prime_to(x: u128, s: &[u64]) -> bool {
    s.iter().all(|&p| !x.is_multiple_of(p as u128))
}

/// All `unit * x^m <= h` with `x` prime to `S`.
fn power_terms(s: &[u64], m: u32, h: u128) -> Vec<u128> {
    let mut out = Vec::new();
    for u in s_units_upto(s, h) {
        let mut x: u128 = 1;
        loop {
            let Some(v) = x.checked_pow(m).and_then(|xm| xm.checked_mul(u)) else {
                break;
            };
            if v > h {
                break;
            }
            if prime_to(x, s) {
                out.push(v);
            }
            x += 1;
        }
    }
    out.sort_unstable();
    out
}

fn strip(mut v: u128, s: &[u64]) -> u128 {
    for &p in s {
        if p == 2 {
            v >>= v.trailing_zeros();
        } else {
            let p = p as u128;
            while v.is_multiple_of(p) {
                v /= p;
            }
        }
    }
    v
}

const SQUARES_MOD_64: u64 = {
    let mut mask = 0u64;
    let mut i = 0;
    while i < 64 {
        mask |= 1 << ((i * i) % 64);
        i += 1;
    }
    mask
};

fn is_power(v: u128, m: u32) -> bool {
    if m == 1 || v <= 1 {
        return true;
    }
    if m == 2 {
        if (SQUARES_MOD_64 >> (v & 63)) & 1 == 0 {
            return false;
        }
        let r = v.sqrt();
        return r * r == v;
    }
    let r = v.nth_root(m);
    r.checked_pow(m) == Some(v)
}

/// Every `tau` in the set with `max(|num|, den) <= h`.
///
/// Enumerates `n = +-a x^m0` and `d = c z^minf` up to `h` and keeps coprime
/// pairs whose difference has the shape `b y^m1`. The result is sorted by
/// height, then value, and grows monotonically with `h`.
pub fn search(t: Triple, s: &[u64], h: u128) -> Result<Vec<SpecPoint>> {
    if h < 1 {
        return Err(Error::Precondition(
            "height bound must be at least 1".into(),
        ));
    }
    if h > MAX_HEIGHT {
        return Err(Error::Unsupported(format!(
            "height bound above {MAX_HEIGHT}"
        )));
    }
    let mut s: Vec<u64> = s.to_vec();
    s.sort_unstable();
    s.dedup();
    let [m0, m1, mi] = t.0;
    let us = power_terms(&s, m0, h);
    let ds = power_terms(&s, mi, h);
    let hits: Vec<(i128, u128)> = us
        .par_chunks(256)
        .flat_map_iter(|chunk| {
            let mut local = Vec::new();
            for &u in chunk {
                for &d in &ds {
                    if u.gcd(&d) != 1 {
                        continue;
                    }
                    for n in [u as i128, -(u as i128)] {
                        let w = n - d as i128;
                        if w != 0 && is_power(strip(w.unsigned_abs(), &s), m1) {
                            local.push((n, d));
                        }
                    }
                }
            }
            local
        })
        .collect();
    let mut out = Vec::with_capacity(hits.len());
    for (n, d) in hits {
        let tau = Rat::new(Int::from(n), Int::from(d));
        let p = spec_point(&tau, t, &s)?
            .ok_or_else(|| Error::Catalog(format!("search emitted non-member {tau}")))?;
        out.push(p);
    }
    sort_points(&mut out);
    Ok(out)
}

pub fn sort_points(v: &mut Vec<SpecPoint>) {
    v.sort_by(|p, q| p.height().cmp(&q.height()).then_with(|| p.tau.cmp(&q.tau)));
    v.dedup_by(|p, q| p.tau == q.tau);
}

/// Parameters `sigma` for covers `B`/`Bt` from points of `T_{4,2,10}`:
/// `+-sqrt(5(1 - tau))` whenever that is rational, together with `0`.
pub fn derive_b_points(base: &[Rat]) -> Vec<Rat> {
    let five = Rat::from_integer(Int::from(5));
    let mut out = vec![Rat::zero()];
    for tau in base {
        if let Some(r) = rat_sqrt(&(&five * (Rat::one() - tau))) {
            if !r.is_zero() {
                out.push(-r.clone());
                out.push(r);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// One row of the table of largest-height witnesses.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessRow {
    pub covers: &'static str,
    pub triple: Triple,
    pub s: Vec<u64>,
    /// Printed size of the specialization set.
    pub size: usize,
    pub witness: AbcWitness,
}

/// The printed extreme witnesses, signs as printed (`x`-term positive).
pub fn extreme_witnesses() -> Vec<WitnessRow> {
    let rows: [(&str, [u32; 3], [u64; 3], usize, [&str; 6]); 4] = [
        (
            "A2",
            [3, 2, 10],
            [2, 3, 5],
            447,
            ["1", "158470321", "-1", "1994904202391", "2^10*3^4*5", "19"],
        ),
        (
            "B,Bt",
            [4, 2, 10],
            [2, 3, 5],
            27,
            ["1", "79", "-1", "6881", "2^8*3^8*5", "1"],
        ),
        (
            "C2,D2",
            [3, 2, 11],
            [2, 3, 11],
            394,
            ["1", "2540833", "-1", "4050085583", "2^18*3*11^6", "1"],
        ),
        (
            "E2",
            [3, 2, 12],
            [2, 3, 11],
            395,
            [
                "1",
                "796531585",
                "-1",
                "22481204531903",
                "2^11*3^5*11^2",
                "17",
            ],
        ),
    ];
    rows.iter()
        .map(|(covers, t, s, size, w)| {
            let n: Vec<Int> = w
                .iter()
                .map(|e| parse_int_expr(e).expect("static data"))
                .collect();
            WitnessRow {
                covers,
                triple: Triple(*t),
                s: s.to_vec(),
                size: *size,
                witness: AbcWitness {
                    a: n[0].clone(),
                    x: n[1].clone(),
                    b: n[2].clone(),
                    y: n[3].clone(),
                    c: n[4].clone(),
                    z: n[5].clone(),
                },
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// arms and tame ramification

/// Where the cusps of the parameter line sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CuspConvention {
    /// Cusps `0, 1, inf`.
    Standard,
    /// Cusps `+-sqrt(d), inf`; both finite cusps count as arm 0.
    Pair(i64),
}

impl CuspConvention {
    pub fn of(param: ParamKind) -> Self {
        match param {
            ParamKind::T => CuspConvention::Standard,
            ParamKind::S5 => CuspConvention::Pair(5),
            ParamKind::S11 => CuspConvention::Pair(-11),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Generic,
    Arm0,
    Arm1,
    ArmInf,
}

impl Location {
    /// Cusp index `0, 1, 2`, if on an arm.
    pub fn cusp(self) -> Option<usize> {
        match self {
            Location::Generic => None,
            Location::Arm0 => Some(0),
            Location::Arm1 => Some(1),
            Location::ArmInf => Some(2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArmClass {
    pub p: u64,
    pub location: Location,
    /// Extremality index; 0 when generic.
    pub j: u64,
}

/// Position of `value` in `P^1(Q_p)` relative to the cusps.
///
/// Standard: arm 0 if `ord_p(tau) > 0`, arm 1 if `ord_p(tau - 1) > 0`, arm
/// inf if `ord_p(tau) < 0`, with `j` the absolute valuation. For the pair
/// convention the finite arms use `ord_p(s^2 - d)`, which equals
/// `ord_p(s -+ sqrt d)` for `p` prime to `2d`.
pub fn classify_arm(value: &Rat, p: u64, conv: CuspConvention) -> Result<ArmClass> {
    let generic = ArmClass {
        p,
        location: Location::Generic,
        j: 0,
    };
    let arm = |location, j: i64| ArmClass {
        p,
        location,
        j: j as u64,
    };
    match conv {
        CuspConvention::Standard => {
            if value.is_zero() || value.is_one() {
                return Err(Error::Cusp {
                    cover: "parameter".into(),
                    value: value.to_string(),
                });
            }
            let v0 = ord_p(value, p)?;
            if v0 > 0 {
                return Ok(arm(Location::Arm0, v0));
            }
            if v0 < 0 {
                return Ok(arm(Location::ArmInf, -v0));
            }
            let v1 = ord_p(&(value - Rat::one()), p)?;
            Ok(if v1 > 0 {
                arm(Location::Arm1, v1)
            } else {
                generic
            })
        }
        CuspConvention::Pair(d) => {
            let q = value * value - Rat::from_integer(Int::from(d));
            if q.is_zero() {
                return Err(Error::Cusp {
                    cover: "parameter".into(),
                    value: value.to_string(),
                });
            }
            if !value.is_zero() {
                let v = ord_p(value, p)?;
                if v < 0 {
                    return Ok(arm(Location::ArmInf, -v));
                }
            }
            let vq = ord_p(&q, p)?;
            Ok(if vq > 0 {
                arm(Location::Arm0, vq)
            } else {
                generic
            })
        }
    }
}

/// Predicted `ord_p` of the field discriminant at a prime outside the
/// cover's bad set: `n - #cycles(g_k^j)` on arm `k`, 0 in the center.
pub fn predict_tame(id: CoverId, value: &Rat, p: u64) -> Result<u32> {
    let spec = covers::spec(id)?;
    if spec.bad_primes().contains(&p) {
        return Err(Error::Precondition(format!(
            "{p} is a bad prime of {}",
            id.name()
        )));
    }
    let arm = classify_arm(value, p, CuspConvention::of(spec.param))?;
    Ok(match arm.location.cusp() {
        None => 0,
        Some(k) => {
            let lam = spec.triple.get(k);
            lam.total() - lam.power(arm.j).len() as u32
        }
    })
}

/// Primes outside the bad set at which `value` lies on an arm, found by
/// factoring the numerators and denominator involved. The flag is false if
/// a cofactor was left unsplit.
pub fn arm_primes(id: CoverId, value: &Rat) -> Result<(Vec<u64>, bool)> {
    let spec = covers::spec(id)?;
    let mut ints = vec![value.denom().clone()];
    match CuspConvention::of(spec.param) {
        CuspConvention::Standard => {
            ints.push(value.numer().clone());
            ints.push(value.numer() - value.denom());
        }
        CuspConvention::Pair(d) => {
            ints.push(value.numer() * value.numer() - Int::from(d) * value.denom() * value.denom());
        }
    }
    let mut out = Vec::new();
    let mut complete = true;
    for n in ints.iter().filter(|n| !n.is_zero() && !n.abs().is_one()) {
        let fac = factor_int_with(n, FactorBudget::default());
        complete &= fac.is_complete();
        for (q, _) in &fac.factors {
            match q.to_u64() {
                Some(q) if !spec.bad_primes().contains(&q) => out.push(q),
                Some(_) => {}
                None => complete = false,
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok((out, complete))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{parse_rat, rat};

    #[test]
    fn classify_examples() {
        let c = classify_arm(&rat(125, 4), 2, CuspConvention::Standard).unwrap();
        assert_eq!((c.location, c.j), (Location::ArmInf, 2));
        let tau = parse_rat("2087^3/2^6*3^15*11").unwrap();
        let c = classify_arm(&tau, 3, CuspConvention::Standard).unwrap();
        assert_eq!((c.location, c.j), (Location::ArmInf, 15));
        assert_eq!(
            classify_arm(&rat(7, 1), 5, CuspConvention::Standard)
                .unwrap()
                .location,
            Location::Generic
        );
        assert_eq!(
            classify_arm(&rat(8, 1), 7, CuspConvention::Standard)
                .unwrap()
                .location,
            Location::Arm1
        );
    }

    #[test]
    fn tame_examples() {
        assert_eq!(predict_tame(CoverId::D, &rat(7, 1), 7).unwrap(), 8);
        assert_eq!(predict_tame(CoverId::D2, &rat(7, 1), 7).unwrap(), 16);
        assert_eq!(predict_tame(CoverId::D, &rat(7, 1), 13).unwrap(), 0);
        assert_eq!(predict_tame(CoverId::D, &rat(7 * 7 * 7, 1), 7).unwrap(), 0);
    }

    #[test]
    fn membership_examples() {
        let t = Triple::new(3, 2, 11);
        assert!(
            validate_membership(&rat(125, 4), t, &[2, 3, 11])
                .unwrap()
                .member
        );
        let m = validate_membership(&rat(7, 1), t, &[2, 3, 11]).unwrap();
        assert!(!m.member);
        assert_eq!(m.failures[0].prime.as_deref(), Some("7"));
    }

    #[test]
    fn line_round_trip() {
        let p = spec_point(&rat(-11, 64), Triple::new(3, 2, 11), &[2, 3, 11])
            .unwrap()
            .unwrap();
        assert_eq!(SpecPoint::from_line(&p.to_line()).unwrap(), p);
    }
}
