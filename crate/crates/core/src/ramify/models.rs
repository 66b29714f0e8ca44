//! Conjugacy-class data of `2.M12.2` and the factorization-pattern measures
//! they induce, with the reference prime counts recorded next to them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::partition::Partition;

/// One class row. Classes outside `2.M12` carry only the merged
/// (`lam12 = lam12t`, `lam24 = lam24t`) patterns and no degree-12 count.
#[derive(Debug, Clone, Serialize)]
pub struct ClassRow {
    pub class: &'static str,
    pub size: u64,
    pub lam12: Partition,
    pub lam12t: Partition,
    pub lam24: Partition,
    pub lam24t: Partition,
    /// Count among the first 190080 good primes for `(f_B, f_Bt, ~f_B, ~f_Bt)`.
    pub count12: Option<u64>,
    /// Count for `(f_D2, ~f_D2)`; `None` on a row merged into the previous one.
    pub count24: Option<u64>,
    pub outer: bool,
}

// class, |C|, l12, l12t, l24, l24t, count12, count24 (-1: merged upward / blank)
const RAW: &[(&str, u64, &str, &str, &str, &str, i64, i64)] = &[
    ("1A", 1, "1^12", "1^12", "1^24", "1^24", 1, 0),
    ("1A", 1, "1^12", "1^12", "2^12", "2^12", 0, 1),
    ("2A", 792, "2^6", "2^6", "4^6", "4^6", 768, 789),
    ("2B", 495, "2^4 1^4", "2^4 1^4", "2^12", "2^12", 470, 503),
    (
        "2B", 495, "2^4 1^4", "2^4 1^4", "2^8 1^8", "2^8 1^8", 521, 515,
    ),
    (
        "3A", 1760, "3^3 1^3", "3^3 1^3", "3^6 1^6", "3^6 1^6", 1735, 1776,
    ),
    (
        "3A", 1760, "3^3 1^3", "3^3 1^3", "6^3 2^3", "6^3 2^3", 1823, 1781,
    ),
    ("3B", 2640, "3^4", "3^4", "3^8", "3^8", 2702, 2578),
    ("3B", 2640, "3^4", "3^4", "6^4", "6^4", 2649, 2510),
    (
        "4A",
        5940,
        "4^2 2^2",
        "4^2 1^4",
        "4^4 2^4",
        "4^4 2^2 1^4",
        6002,
        11992,
    ),
    (
        "4B",
        5940,
        "4^2 1^4",
        "4^2 2^2",
        "4^4 2^2 1^4",
        "4^4 2^4",
        5993,
        -1,
    ),
    (
        "5A", 9504, "5^2 1^2", "5^2 1^2", "5^4 1^4", "5^4 1^4", 9329, 9415,
    ),
    (
        "5A", 9504, "5^2 1^2", "5^2 1^2", "10^2 2^2", "10^2 2^2", 9405, 9613,
    ),
    ("6A", 15840, "6^2", "6^2", "12^2", "12^2", 15798, 15819),
    (
        "6B",
        15840,
        "6 3 2 1",
        "6 3 2 1",
        "6^2 3^2 2^2 1^2",
        "6^2 3^2 2^2 1^2",
        15863,
        15590,
    ),
    (
        "6B", 15840, "6 3 2 1", "6 3 2 1", "6^3 2^3", "6^3 2^3", 15881, 15828,
    ),
    (
        "8A",
        23760,
        "8 4",
        "8 2 1^2",
        "8^2 4^2",
        "8^2 4 2 1^2",
        23613,
        47707,
    ),
    (
        "8B",
        23760,
        "8 2 1^2",
        "8 4",
        "8^2 4 2 1^2",
        "8^2 4^2",
        24022,
        -1,
    ),
    ("10A", 19008, "10 2", "10 2", "20 4", "20 4", 19048, 18965),
    (
        "11AB", 17280, "11 1", "11 1", "11^2 1^2", "11^2 1^2", 17031, 17308,
    ),
    ("11AB", 17280, "11 1", "11 1", "22 2", "22 2", 17425, 17194),
    ("2C", 1584, "2^12", "2^12", "2^24", "2^24", -1, 1650),
    (
        "4C", 7920, "4^4 2^4", "4^4 2^4", "4^8 2^8", "4^8 2^8", -1, 7964,
    ),
    ("4D", 15840, "4^6", "4^6", "8^6", "8^6", -1, 15688),
    ("6C", 31680, "6^4", "6^4", "6^8", "6^8", -1, 31651),
    (
        "10BC", 38016, "10^2 2^2", "10^2 2^2", "10^4 2^4", "10^4 2^4", -1, 38245,
    ),
    ("12A", 31680, "12^2", "12^2", "24^2", "24^2", -1, 31577),
    (
        "12BC",
        63360,
        "12 6 4 2",
        "12 6 4 2",
        "12^2 6^2 4^2 2^2",
        "12^2 6^2 4^2 2^2",
        -1,
        63493,
    ),
];

/// Number of primes behind each reference count column.
pub const REFERENCE_PRIMES: u64 = 190080;

pub fn rows() -> Vec<ClassRow> {
    RAW.iter()
        .enumerate()
        .map(|(i, &(class, size, a, b, c, d, n12, n24))| ClassRow {
            class,
            size,
            lam12: a.parse().unwrap(),
            lam12t: b.parse().unwrap(),
            lam24: c.parse().unwrap(),
            lam24t: d.parse().unwrap(),
            count12: (n12 >= 0).then_some(n12 as u64),
            count24: (n24 >= 0).then_some(n24 as u64),
            outer: i >= 21,
        })
        .collect()
}

/// Which pattern a group model reads off each class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModelKind {
    /// `M12` on 12 points.
    M12,
    /// `M12` on the twin 12 points.
    M12Twin,
    /// `2.M12` on 24 points.
    DoubleM12,
    /// `M12.2` on 24 points (both twins).
    M12Ext,
    /// `2.M12.2` on 48 points.
    DoubleM12Ext,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::M12 => "M12",
            ModelKind::M12Twin => "M12 (twin)",
            ModelKind::DoubleM12 => "2.M12",
            ModelKind::M12Ext => "M12.2",
            ModelKind::DoubleM12Ext => "2.M12.2",
        }
    }

    pub fn degree(self) -> u32 {
        match self {
            ModelKind::M12 | ModelKind::M12Twin => 12,
            ModelKind::DoubleM12 | ModelKind::M12Ext => 24,
            ModelKind::DoubleM12Ext => 48,
        }
    }
}

/// A probability measure on factorization patterns.
#[derive(Debug, Clone, Serialize)]
pub struct GroupModel {
    pub name: String,
    pub degree: u32,
    /// Pattern -> summed class sizes; `total` is their sum.
    pub weights: BTreeMap<Partition, u64>,
    pub total: u64,
}

impl GroupModel {
    pub fn from_table(kind: ModelKind) -> Self {
        let mut weights: BTreeMap<Partition, u64> = BTreeMap::new();
        let mut total = 0;
        for r in rows() {
            let pat = match kind {
                ModelKind::M12 if !r.outer => Some(r.lam12.clone()),
                ModelKind::M12Twin if !r.outer => Some(r.lam12t.clone()),
                ModelKind::DoubleM12 if !r.outer => Some(r.lam24.clone()),
                ModelKind::M12Ext => Some(if r.outer {
                    r.lam12.clone()
                } else {
                    concat(&r.lam12, &r.lam12t)
                }),
                ModelKind::DoubleM12Ext => Some(if r.outer {
                    r.lam24.clone()
                } else {
                    concat(&r.lam24, &r.lam24t)
                }),
                _ => None,
            };
            if let Some(p) = pat {
                *weights.entry(p).or_default() += r.size;
                total += r.size;
            }
        }
        GroupModel {
            name: kind.name().to_string(),
            degree: kind.degree(),
            weights,
            total,
        }
    }

    /// Measure from an explicit census (e.g. of a computed permutation group).
    pub fn from_census(name: &str, census: &BTreeMap<Partition, u64>) -> Self {
        let total = census.values().sum();
        let degree = census.keys().next().map_or(0, |p| p.total());
        GroupModel {
            name: name.to_string(),
            degree,
            weights: census.clone(),
            total,
        }
    }

    pub fn prob(&self, p: &Partition) -> f64 {
        self.weights.get(p).copied().unwrap_or(0) as f64 / self.total as f64
    }

    pub fn support(&self) -> impl Iterator<Item = &Partition> {
        self.weights.keys()
    }
}

fn concat(a: &Partition, b: &Partition) -> Partition {
    let mut v = a.parts().to_vec();
    v.extend_from_slice(b.parts());
    Partition::new(v)
}

/// Reference counts by pattern for one of the count columns.
pub fn reference_counts(kind: ModelKind) -> BTreeMap<Partition, u64> {
    let mut out: BTreeMap<Partition, u64> = BTreeMap::new();
    let rs = rows();
    let mut last_key: Option<Partition> = None;
    for r in &rs {
        let (key, count) = match kind {
            ModelKind::M12 if !r.outer => (r.lam12.clone(), r.count12),
            ModelKind::M12Twin if !r.outer => (r.lam12t.clone(), r.count12),
            ModelKind::DoubleM12 if !r.outer => (r.lam24.clone(), r.count12),
            ModelKind::M12Ext => (
                if r.outer {
                    r.lam12.clone()
                } else {
                    concat(&r.lam12, &r.lam12t)
                },
                r.count24,
            ),
            ModelKind::DoubleM12Ext => (
                if r.outer {
                    r.lam24.clone()
                } else {
                    concat(&r.lam24, &r.lam24t)
                },
                r.count24,
            ),
            _ => continue,
        };
        match count {
            Some(c) => {
                *out.entry(key.clone()).or_default() += c;
                last_key = Some(key);
            }
            // merged row: the previous entry already covers the same pattern
            None => debug_assert!(last_key.as_ref() == Some(&key) || r.outer),
        }
    }
    out
}
