//! Invariants of the fields cut out by specialized polynomials: maximal
//! orders and discriminants, root discriminants, Frobenius statistics,
//! group-drop evidence and splitting primes.

mod linalg;
pub mod models;
pub mod order;
pub mod stats;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub use models::{GroupModel, ModelKind};
pub use order::{dedekind_maximal, field_disc_valuation, FieldAnalyzer, LocalIndex, LocalModel};
pub use stats::{
    drop_detect, partition_scan, splits_completely, splitting_primes, z_score, DropReport,
    DropVerdict, PartitionStat, PrimeRange,
};

use crate::covers::{self, SpecializedField};
use crate::error::Result;
use crate::exactnum::{factor_int_with, FactorBudget};
use crate::obstruct::{
    b_cover_obstruction, conjugation_obstruction, ConjugationVerdict, LiftVerdict,
};
use crate::polyalg::IntPoly;
use crate::specsets::arm_primes;

/// Per-field summary, serialized as the CLI's JSON report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldReport {
    pub source: String,
    pub degree: usize,
    /// Nonzero `ord_p` of the field discriminant, keyed by the prime.
    pub disc: BTreeMap<String, i64>,
    pub disc_sign: i8,
    /// `ord_p` of the polynomial discriminant at the examined primes.
    pub poly_disc: BTreeMap<String, i64>,
    /// Primes at which the field valuation was computed.
    pub examined: Vec<u64>,
    /// Root discriminant `|d|^{1/n}`.
    pub rd: f64,
    pub partitions: Option<PartitionStat>,
    pub verdicts: Verdicts,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Verdicts {
    pub drop: Option<DropReport>,
    pub obstruction: Option<String>,
    /// Set when the candidate prime list rests on an unfactored cofactor.
    pub indeterminate: bool,
}

impl FieldReport {
    pub fn valuation(&self, p: u64) -> i64 {
        self.disc.get(&p.to_string()).copied().unwrap_or(0)
    }

    /// The field discriminant as `(prime, exponent)` pairs.
    pub fn disc_factors(&self) -> Vec<(u64, i64)> {
        let mut v: Vec<(u64, i64)> = self
            .disc
            .iter()
            .map(|(k, &e)| (k.parse().unwrap(), e))
            .collect();
        v.sort_unstable();
        v
    }

    /// `2^12 3^24 11^22` style rendering.
    pub fn disc_string(&self) -> String {
        let s: Vec<String> = self
            .disc_factors()
            .iter()
            .map(|(p, e)| format!("{p}^{e}"))
            .collect();
        if s.is_empty() {
            "1".into()
        } else {
            s.join(" ")
        }
    }
}

/// `|d|^{1/n}` from the valuations in a report.
pub fn root_discriminant(report: &FieldReport) -> f64 {
    rd_from(&report.disc_factors(), report.degree)
}

pub fn rd_from(factors: &[(u64, i64)], n: usize) -> f64 {
    let log: f64 = factors
        .iter()
        .map(|&(p, e)| e as f64 * (p as f64).ln())
        .sum();
    (log / n as f64).exp()
}

/// What `analyze_poly` should do beyond the discriminant.
#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    /// Primes to examine in addition to those found in the polynomial
    /// discriminant.
    pub primes: Vec<u64>,
    /// Skip factoring the polynomial discriminant; examine only `primes`.
    pub only_listed: bool,
    pub scan: Option<PrimeRange>,
    pub model: Option<GroupModel>,
}

/// Field discriminant, root discriminant and optional Frobenius scan of
/// `Q[x]/f`.
pub fn analyze_poly(f: &IntPoly, source: &str, opts: &AnalyzeOptions) -> Result<FieldReport> {
    let fa = FieldAnalyzer::new(f)?;
    analyze_with(&fa, source, opts)
}

pub fn analyze_with(
    fa: &FieldAnalyzer,
    source: &str,
    opts: &AnalyzeOptions,
) -> Result<FieldReport> {
    let mut notes = Vec::new();
    let mut primes: BTreeSet<u64> = opts.primes.iter().copied().collect();
    let mut indeterminate = false;
    if !opts.only_listed {
        let budget = FactorBudget {
            trial_bound: 1_000_000,
            rho_iterations: 1 << 16,
        };
        let fac = factor_int_with(fa.poly_disc(), budget);
        for (q, _) in &fac.factors {
            match q.to_string().parse::<u64>() {
                Ok(v) => {
                    primes.insert(v);
                }
                Err(_) => {
                    indeterminate = true;
                    notes.push(format!(
                        "polynomial discriminant has a prime factor {q} beyond u64"
                    ));
                }
            }
        }
        if let Some(c) = &fac.cofactor {
            if opts.primes.is_empty() {
                indeterminate = true;
            }
            notes.push(format!(
                "polynomial discriminant has an unfactored cofactor of {} digits; its primes are treated as unramified",
                c.to_string().len()
            ));
        }
    }
    let mut disc = BTreeMap::new();
    let mut poly_disc = BTreeMap::new();
    for &p in &primes {
        let vp = fa.poly_valuation(p);
        let vf = fa.valuation(p)?;
        debug_assert!(vp >= vf && (vp - vf) % 2 == 0);
        poly_disc.insert(p.to_string(), vp);
        if vf != 0 {
            disc.insert(p.to_string(), vf);
        }
    }
    let degree = fa.poly().deg();
    let mut report = FieldReport {
        source: source.to_string(),
        degree,
        disc,
        disc_sign: fa.sign(),
        poly_disc,
        examined: primes.into_iter().collect(),
        rd: 0.0,
        partitions: None,
        verdicts: Verdicts {
            indeterminate,
            ..Default::default()
        },
        notes,
    };
    report.rd = root_discriminant(&report);
    if let Some(range) = &opts.scan {
        let stat = partition_scan(fa.poly(), range)?;
        if let Some(model) = &opts.model {
            if stat.scanned() >= stats::MIN_PRIMES && model.degree as usize == degree {
                report.verdicts.drop = Some(drop_detect(&stat, model)?);
            }
        }
        report.partitions = Some(stat);
    }
    Ok(report)
}

/// Primes dividing `|M12|`; tame specialization theory says nothing there.
pub const GROUP_PRIMES: [u64; 4] = [2, 3, 5, 11];

/// [`analyze_with`] for a specialized cover, examining only the primes
/// where ramification is possible: the bad primes, the primes of `|M12|`
/// and those where the parameter sits on an arm. Falls back to factoring
/// the polynomial discriminant if the arm primes are not fully known.
pub fn analyze_specialized(field: &SpecializedField, opts: &AnalyzeOptions) -> Result<FieldReport> {
    let id = field.cover;
    let spec = covers::spec(id)?;
    let lift = field.degree == 48;
    let (arms, complete) = arm_primes(id, &field.value)?;
    let mut o = opts.clone();
    o.primes.extend(spec.bad_primes());
    o.primes.extend(GROUP_PRIMES);
    o.primes.extend(arms);
    o.only_listed = complete;
    if o.scan.is_some() && o.model.is_none() && field.caveat.is_none() {
        o.model = match field.degree {
            12 => Some(GroupModel::from_table(ModelKind::M12)),
            24 => Some(GroupModel::from_table(ModelKind::M12Ext)),
            48 => Some(GroupModel::from_table(ModelKind::DoubleM12Ext)),
            _ => None,
        };
    }
    let source = format!("{}{}({})", if lift { "~" } else { "" }, id, field.value);
    let fa = FieldAnalyzer::new(&field.poly)?;
    let mut report = analyze_with(&fa, &source, &o)?;
    if !complete {
        report
            .notes
            .push("arm primes not fully factored; polynomial discriminant factored instead".into());
    }
    if let Some(c) = &field.caveat {
        report.notes.push(c.clone());
    }
    if !lift {
        report.verdicts.obstruction = Some(match conjugation_obstruction(id) {
            ConjugationVerdict::LocalSymbols => {
                let r = b_cover_obstruction(&field.value)?;
                match r.verdict {
                    LiftVerdict::Liftable => "liftable: every local symbol is +1".to_string(),
                    LiftVerdict::Obstructed => {
                        let at: Vec<String> =
                            r.obstructed_at.iter().map(|v| v.to_string()).collect();
                        format!("obstructed at {}", at.join(", "))
                    }
                }
            }
            v => v.describe().to_string(),
        });
    }
    Ok(report)
}

/// Default Frobenius model for a degree.
pub fn default_model(degree: usize) -> Option<GroupModel> {
    match degree {
        12 => Some(GroupModel::from_table(ModelKind::M12)),
        24 => Some(GroupModel::from_table(ModelKind::M12Ext)),
        48 => Some(GroupModel::from_table(ModelKind::DoubleM12Ext)),
        _ => None,
    }
}
