//! Integer partitions as they appear in cycle types and factorization
//! patterns. Parts are kept in non-increasing order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn ones(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_part(&self, k: u32) -> bool {
        self.0.contains(&k)
    }

    pub fn max_part(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Order of any permutation with this cycle type.
    pub fn order(&self) -> u64 {
        self.0
            .iter()
            .fold(1u64, |acc, &c| num_integer::lcm(acc, c as u64))
    }

    /// Cycle type of `g^j` for `g` of this cycle type.
    pub fn power(&self, j: u64) -> Partition {
        let mut out = Vec::new();
        for &c in &self.0 {
            let g = num_integer::gcd(c as u64, j) as u32;
            for _ in 0..g {
                out.push(c / g);
            }
        }
        Partition::new(out)
    }

    /// Doubles every part count: the cycle type on two disjoint copies.
    pub fn doubled(&self) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&self.0);
        Partition::new(v)
    }

    /// `(part, multiplicity)` in decreasing part order.
    pub fn grouped(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .grouped()
            .into_iter()
            .map(|(p, m)| {
                if m == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{m}")
                }
            })
            .collect();
        write!(f, "{}", s.join(" "))
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Partition {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Accepts `4^2 2^2`, `4^2.2^2`, the compact `4422` / `(10)2` / `84`, and
/// `12 6 4 2` (space separated parts).
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad partition {s:?}"));
        let s = s.trim();
        let mut parts = Vec::new();
        let spaced = s.contains(' ') || s.contains('^') || s.contains('.');
        if spaced {
            for tok in s.split([' ', '.']).filter(|t| !t.is_empty()) {
                let tok = tok.trim_start_matches('(').replace(')', "");
                let (b, e) = tok.split_once('^').unwrap_or((&tok, "1"));
                let b: u32 = b.parse().map_err(|_| bad())?;
                let e: u32 = e.parse().map_err(|_| bad())?;
                parts.extend(std::iter::repeat_n(b, e as usize));
            }
        } else {
            let mut chars = s.chars().peekable();
            while let Some(c) = chars.next() {
                if c == '(' {
                    let mut num = String::new();
                    for d in chars.by_ref() {
                        if d == ')' {
                            break;
                        }
                        num.push(d);
                    }
                    parts.push(num.parse().map_err(|_| bad())?);
                } else {
                    parts.push(c.to_digit(10).ok_or_else(bad)?);
                }
            }
        }
        if parts.is_empty() || parts.contains(&0) {
            return Err(bad());
        }
        Ok(Partition::new(parts))
    }
}
