//! Frobenius partition statistics over prime ranges.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::models::GroupModel;
use crate::error::{Error, Result};
use crate::exactnum::{first_primes, primes_between};
use crate::partition::Partition;
use crate::polyalg::{ddf_partition, FpPoly, IntPoly};

/// Which primes a scan covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrimeRange {
    /// All primes in `[lo, hi]`.
    Between { lo: u64, hi: u64 },
    /// The first `count` primes not in `exclude`, starting at 2.
    First { count: usize, exclude: Vec<u64> },
    /// The first `count` primes at which the pattern is defined.
    FirstGood { count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionStat {
    pub range: PrimeRange,
    pub degree: u32,
    pub counts: BTreeMap<Partition, u64>,
    /// Primes in range where `f mod p` drops degree or is not squarefree.
    pub excluded: u64,
    pub excluded_primes: Vec<u64>,
}

impl PartitionStat {
    pub fn scanned(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, p: &Partition) -> u64 {
        self.counts.get(p).copied().unwrap_or(0)
    }

    pub fn frequency(&self, p: &Partition) -> f64 {
        self.count(p) as f64 / self.scanned().max(1) as f64
    }
}

const BLOCK: usize = 512;

fn scan_list(f: &IntPoly, primes: &[u64]) -> Vec<(u64, Option<Partition>)> {
    // blocks keep the merge order fixed regardless of thread count
    let blocks: Vec<Vec<(u64, Option<Partition>)>> = primes
        .par_chunks(BLOCK)
        .map(|chunk| chunk.iter().map(|&p| (p, ddf_partition(f, p))).collect())
        .collect();
    blocks.into_iter().flatten().collect()
}

/// Factorization patterns of `f mod p` over the range, tallied.
pub fn partition_scan(f: &IntPoly, range: &PrimeRange) -> Result<PartitionStat> {
    if f.deg() == 0 {
        return Err(Error::Precondition("constant polynomial".into()));
    }
    if !f.is_squarefree() {
        return Err(Error::Precondition("polynomial is not squarefree".into()));
    }
    let results: Vec<(u64, Option<Partition>)> = match range {
        PrimeRange::Between { lo, hi } => scan_list(f, &primes_between(*lo, *hi)),
        PrimeRange::First { count, exclude } => scan_list(f, &first_primes(2, *count, exclude)),
        PrimeRange::FirstGood { count } => {
            let mut out = Vec::with_capacity(*count);
            let mut start = 2;
            let mut good = 0;
            while good < *count {
                let want = (*count - good).max(64);
                let ps = first_primes(start, want, &[]);
                start = ps.last().unwrap() + 1;
                for r in scan_list(f, &ps) {
                    if good == *count {
                        break;
                    }
                    good += usize::from(r.1.is_some());
                    out.push(r);
                }
            }
            out
        }
    };
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    let mut excluded_primes = Vec::new();
    for (p, r) in results {
        match r {
            Some(part) => *counts.entry(part).or_default() += 1,
            None => excluded_primes.push(p),
        }
    }
    Ok(PartitionStat {
        range: range.clone(),
        degree: f.deg() as u32,
        counts,
        excluded: excluded_primes.len() as u64,
        excluded_primes,
    })
}

/// Whether `f` splits into distinct linear factors mod `p`.
pub fn splits_completely(f: &IntPoly, p: u64) -> bool {
    let fp = f.mod_p(p);
    if fp.deg() != f.deg() {
        return false;
    }
    let m = fp.monic();
    let x = FpPoly::x(p);
    let xp = x.powmod(&BigUint::from(p), &m);
    // x^p = x mod f forces f | x^p - x, so the factors are distinct and linear
    xp == x.rem(&m) && m.deg() >= 1
}

/// Primes in `[lo, hi]` at which `f` splits completely.
pub fn splitting_primes(f: &IntPoly, lo: u64, hi: u64) -> Vec<u64> {
    let primes = primes_between(lo, hi);
    let blocks: Vec<Vec<u64>> = primes
        .par_chunks(BLOCK)
        .map(|chunk| {
            chunk
                .iter()
                .copied()
                .filter(|&p| splits_completely(f, p))
                .collect()
        })
        .collect();
    blocks.into_iter().flatten().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DropVerdict {
    /// Observed patterns fit the model's support.
    Consistent,
    /// Patterns expected under the model are missing, or foreign ones occur.
    DropSuspected,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Deviation {
    pub partition: Partition,
    pub observed: u64,
    pub expected: f64,
    pub z: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DropReport {
    pub model: String,
    pub verdict: DropVerdict,
    pub scanned: u64,
    /// Model patterns with expected count at least the floor but never seen.
    pub missing: Vec<Partition>,
    /// Seen patterns outside the model's support.
    pub extra: Vec<Partition>,
    /// Patterns whose binomial z-score exceeds the threshold (informational).
    pub deviations: Vec<Deviation>,
}

/// Minimum scan size for a verdict.
pub const MIN_PRIMES: u64 = 500;
/// Expected-count floor under which a missing pattern is not held against
/// the model.
pub const EXPECTED_FLOOR: f64 = 10.0;
/// Binomial z-score bound.
pub const Z_BOUND: f64 = 4.0;

/// Binomial z-score of `observed` successes out of `n` at probability `q`.
pub fn z_score(observed: u64, n: u64, q: f64) -> f64 {
    let mean = n as f64 * q;
    let sd = (n as f64 * q * (1.0 - q)).sqrt();
    if sd == 0.0 {
        return if observed as f64 == mean {
            0.0
        } else {
            f64::INFINITY
        };
    }
    (observed as f64 - mean) / sd
}

/// Compares observed patterns with a model's support. The verdict is
/// evidence only: a group drop is suspected, never proved.
pub fn drop_detect(stat: &PartitionStat, model: &GroupModel) -> Result<DropReport> {
    let n = stat.scanned();
    if n < MIN_PRIMES {
        return Err(Error::Precondition(format!(
            "drop detection needs at least {MIN_PRIMES} primes, got {n}"
        )));
    }
    if stat.degree != model.degree {
        return Err(Error::Precondition(format!(
            "degree {} scanned against a degree-{} model",
            stat.degree, model.degree
        )));
    }
    let extra: Vec<Partition> = stat
        .counts
        .keys()
        .filter(|p| !model.weights.contains_key(*p))
        .cloned()
        .collect();
    let missing: Vec<Partition> = model
        .support()
        .filter(|p| model.prob(p) * n as f64 >= EXPECTED_FLOOR && stat.count(p) == 0)
        .cloned()
        .collect();
    let mut deviations = Vec::new();
    for p in model.support() {
        let q = model.prob(p);
        let z = z_score(stat.count(p), n, q);
        if z.abs() > Z_BOUND {
            deviations.push(Deviation {
                partition: p.clone(),
                observed: stat.count(p),
                expected: q * n as f64,
                z,
            });
        }
    }
    let verdict = if extra.is_empty() && missing.is_empty() {
        DropVerdict::Consistent
    } else {
        DropVerdict::DropSuspected
    };
    Ok(DropReport {
        model: model.name.clone(),
        verdict,
        scanned: n,
        missing,
        extra,
        deviations,
    })
}
