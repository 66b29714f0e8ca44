//! Local Hilbert symbols and the obstructions to lifting `M12` fields to
//! the double cover `2.M12`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::covers::CoverId;
use crate::error::{Error, Result};
use crate::exactnum::{factor_int, jacobi, split_val, Int, Rat};

/// A place of `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "oo" | "∞" => Ok(Place::Infinity),
            t => match t.parse::<u64>() {
                Ok(p) if crate::exactnum::is_prime_u64(p) => Ok(Place::Prime(p)),
                _ => Err(Error::Parse(format!("not a place: {s:?}"))),
            },
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An integer in the square class of `x` (`num * den`).
fn square_class(x: &Rat) -> Int {
    x.numer() * x.denom()
}

fn mod_small(n: &Int, m: u64) -> u64 {
    n.mod_floor(&Int::from(m)).to_u64().expect("residue fits")
}

/// `(a, b)_v`, the Hilbert symbol at `v`.
pub fn hilbert_symbol(a: &Rat, b: &Rat, v: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("Hilbert symbol argument"));
    }
    let (a, b) = (square_class(a), square_class(b));
    Ok(match v {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => {
            let pb = Int::from(p);
            let (al, u) = split_val(&a, &pb);
            let (be, w) = split_val(&b, &pb);
            if p == 2 {
                let eps = |x: &Int| (mod_small(x, 4) == 3) as u32;
                let omega = |x: &Int| matches!(mod_small(x, 8), 3 | 5) as u32;
                let e = eps(&u) * eps(&w) + al * omega(&w) + be * omega(&u);
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                let mut s: i8 = if (al * be) % 2 == 1 && p % 4 == 3 {
                    -1
                } else {
                    1
                };
                if be % 2 == 1 {
                    s *= jacobi(&u, &pb);
                }
                if al % 2 == 1 {
                    s *= jacobi(&w, &pb);
                }
                s
            }
        }
    })
}

fn primes_of(x: &Rat, out: &mut Vec<u64>) -> Result<()> {
    for n in [x.numer(), x.denom()] {
        if n.abs() <= Int::from(1) {
            continue;
        }
        let fac = factor_int(n);
        if let Some(c) = fac.cofactor {
            return Err(Error::UnfactoredCofactor(c.to_string()));
        }
        for (q, _) in fac.factors {
            out.push(
                q.to_u64()
                    .ok_or_else(|| Error::Unsupported(format!("prime {q} beyond u64")))?,
            );
        }
    }
    Ok(())
}

/// Places where `(a, b)_v` can be `-1`: infinity, 2 and the primes of `a`
/// and `b`, together with `extra`.
pub fn relevant_places(a: &Rat, b: &Rat, extra: &[u64]) -> Result<Vec<Place>> {
    let mut ps = vec![2];
    ps.extend_from_slice(extra);
    primes_of(a, &mut ps)?;
    primes_of(b, &mut ps)?;
    ps.sort_unstable();
    ps.dedup();
    let mut out = vec![Place::Infinity];
    out.extend(ps.into_iter().map(Place::Prime));
    Ok(out)
}

/// Product of `(a, b)_v` over every place that can contribute; Hilbert
/// reciprocity says it is 1.
pub fn reciprocity_check(a: &Rat, b: &Rat) -> Result<bool> {
    let mut prod = 1;
    for v in relevant_places(a, b, &[])? {
        prod *= hilbert_symbol(a, b, v)?;
    }
    Ok(prod == 1)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlaceSymbol {
    pub place: Place,
    pub symbol: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftVerdict {
    Liftable,
    Obstructed,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObstructionReport {
    #[serde(with = "crate::exactnum::serde_str")]
    pub a: Rat,
    #[serde(with = "crate::exactnum::serde_str")]
    pub b: Rat,
    /// Symbols at every place that can be nontrivial; all others are `+1`.
    pub places: Vec<PlaceSymbol>,
    pub product: i8,
    pub obstructed_at: Vec<Place>,
    pub verdict: LiftVerdict,
}

impl ObstructionReport {
    pub fn symbol(&self, v: Place) -> i8 {
        self.places
            .iter()
            .find(|s| s.place == v)
            .map_or(1, |s| s.symbol)
    }
}

/// Local symbols `(a, b)_v` at the places that matter, plus `extra` primes.
pub fn symbol_report(a: &Rat, b: &Rat, extra: &[u64]) -> Result<ObstructionReport> {
    let mut places = Vec::new();
    let mut product = 1;
    let mut obstructed_at = Vec::new();
    for v in relevant_places(a, b, extra)? {
        let symbol = hilbert_symbol(a, b, v)?;
        product *= symbol;
        if symbol < 0 {
            obstructed_at.push(v);
        }
        places.push(PlaceSymbol { place: v, symbol });
    }
    let verdict = if obstructed_at.is_empty() {
        LiftVerdict::Liftable
    } else {
        LiftVerdict::Obstructed
    };
    Ok(ObstructionReport {
        a: a.clone(),
        b: b.clone(),
        places,
        product,
        obstructed_at,
        verdict,
    })
}

/// Local obstructions to lifting `K(B, tau)` to a `2.M12` field: the
/// local root number at `v` is `(25 - 5 tau^2, tau)_v`.
pub fn b_cover_obstruction(tau: &Rat) -> Result<ObstructionReport> {
    let five = Rat::from_integer(Int::from(5));
    let a = &five * &five - &five * tau * tau;
    if tau.is_zero() || a.is_zero() {
        return Err(Error::Degenerate(format!(
            "tau = {tau} makes a symbol argument vanish"
        )));
    }
    symbol_report(&a, tau, &[3, 5])
}

/// Family-wide lifting rules that depend only on the cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjugationVerdict {
    /// Complex conjugation acts as `2^6` (class 2A), which has no
    /// involution above it in `2.M12`: obstructed at infinity for every
    /// real specialization.
    ObstructedAtInfinity,
    /// Complex conjugation lies in class 2C, whose lifts to the isoclinic
    /// `(2.M12.2)*` have order 4: no specialization embeds there.
    NoIsoclinicLift,
    /// No family-level rule; use the local symbols of
    /// [`b_cover_obstruction`].
    LocalSymbols,
}

impl ConjugationVerdict {
    pub fn describe(self) -> &'static str {
        match self {
            ConjugationVerdict::ObstructedAtInfinity => "always obstructed at infinity",
            ConjugationVerdict::NoIsoclinicLift => "no (2.M12.2)* lift",
            ConjugationVerdict::LocalSymbols => {
                "decided by the local symbols (25 - 5 tau^2, tau)_v"
            }
        }
    }
}

pub fn conjugation_obstruction(id: CoverId) -> ConjugationVerdict {
    match id {
        CoverId::E => ConjugationVerdict::ObstructedAtInfinity,
        CoverId::B | CoverId::Bt => ConjugationVerdict::LocalSymbols,
        CoverId::A
        | CoverId::C
        | CoverId::D
        | CoverId::A2
        | CoverId::C2
        | CoverId::D2
        | CoverId::E2 => ConjugationVerdict::NoIsoclinicLift,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn h(a: i64, b: i64, v: Place) -> i8 {
        hilbert_symbol(&rat(a, 1), &rat(b, 1), v).unwrap()
    }

    #[test]
    fn small_symbols() {
        assert_eq!(h(-1, -1, Place::Infinity), -1);
        assert_eq!(h(-1, -1, Place::Prime(2)), -1);
        assert_eq!(h(-1, -1, Place::Prime(3)), 1);
        assert_eq!(h(2, 3, Place::Prime(2)), -1);
        assert_eq!(h(2, 3, Place::Prime(3)), -1);
        assert_eq!(h(3, 5, Place::Prime(5)), -1);
        assert_eq!(h(1, 7, Place::Prime(7)), 1);
        assert_eq!(h(5, 5, Place::Prime(5)), 1);
        assert!(reciprocity_check(&rat(-6, 35), &rat(10, 21)).unwrap());
    }

    #[test]
    fn b_examples() {
        assert_eq!(
            b_cover_obstruction(&rat(5, 1)).unwrap().verdict,
            LiftVerdict::Liftable
        );
        let r = b_cover_obstruction(&rat(-3, 1)).unwrap();
        // reciprocity pairs the infinite obstruction with one at 5
        assert_eq!(r.obstructed_at, vec![Place::Infinity, Place::Prime(5)]);
        assert_eq!(r.product, 1);
        let r = b_cover_obstruction(&rat(4, 1)).unwrap();
        assert!(r.places.iter().all(|s| s.symbol == 1));
    }
}
