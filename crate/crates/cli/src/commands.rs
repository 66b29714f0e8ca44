use m12_core::covers::{self, CoverId, SpecializedField};
use m12_core::error::{Error, ErrorClass, Result};
use m12_core::exactnum::{parse_rat, Rat};
use m12_core::obstruct::{self, Place};
use m12_core::permgrp::verify_monodromy;
use m12_core::ramify::{
    self, AnalyzeOptions, DropReport, GroupModel, ModelKind, PartitionStat, PrimeRange,
};
use m12_core::specsets::{self, CuspConvention, Triple};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache;
use crate::{Command, RunConfig};

pub struct Output {
    pub text: String,
    /// Nonzero status to exit with after printing.
    pub status: Option<ErrorClass>,
}

impl Output {
    fn json<T: Serialize>(v: &T) -> Result<Self> {
        let mut text =
            serde_json::to_string_pretty(v).map_err(|e| Error::Unsupported(e.to_string()))?;
        text.push('\n');
        Ok(Output { text, status: None })
    }
}

/// Above this many primes a scan needs `--slow`.
const DESK_PRIMES: usize = 50_000;

pub fn parse_height(s: &str) -> Result<u128> {
    let bad = || Error::Parse(format!("bad height bound {s:?}"));
    let s = s.trim();
    let (base, exp) = if let Some((m, e)) = s.split_once(['e', 'E']) {
        (
            m.parse::<u128>().map_err(|_| bad())?,
            e.parse::<u32>().map_err(|_| bad())?,
        )
    } else if let Some(e) = s.strip_prefix("10^") {
        (1, e.parse::<u32>().map_err(|_| bad())?)
    } else {
        (s.parse::<u128>().map_err(|_| bad())?, 0)
    };
    10u128
        .checked_pow(exp)
        .and_then(|p| p.checked_mul(base))
        .ok_or_else(bad)
}

fn field(id: CoverId, value: &Rat, lift: bool, slow: bool) -> Result<SpecializedField> {
    if lift {
        if !slow {
            return Err(Error::Unsupported(
                "degree-48 lifts are slow to analyze; pass --slow".into(),
            ));
        }
        return covers::build_lift(id, value);
    }
    match id {
        CoverId::E => Ok(covers::specialize_e_twins(value)?.0),
        _ => covers::specialize(id, value),
    }
}

fn cover_json(id: CoverId) -> Result<Value> {
    let s = covers::spec(id)?;
    Ok(json!({
        "id": id.name(),
        "field": s.field,
        "param": s.param,
        "degree": s.degree,
        "triple": s.triple.to_string(),
        "bad": s.bad.iter().map(|(p, b)| json!({"p": p, "behavior": b})).collect::<Vec<_>>(),
        "group": s.group,
        "twin": s.twin.map(|t| t.name()),
        "lift": s.lift,
        "equation": s.equation,
    }))
}

#[derive(Serialize)]
struct StatsOut {
    source: String,
    stat: PartitionStat,
    drop: Option<DropReport>,
    splitting: Option<Vec<u64>>,
}

pub fn run(cfg: &RunConfig) -> Result<Output> {
    match &cfg.command {
        Command::Covers { id } => match id {
            Some(id) => Output::json(&cover_json(*id)?),
            None => Output::json(
                &CoverId::ALL
                    .iter()
                    .map(|&i| cover_json(i))
                    .collect::<Result<Vec<_>>>()?,
            ),
        },
        Command::Specialize { id, value } => {
            let v = parse_rat(value)?;
            if *id == CoverId::E {
                let (a, b) = covers::specialize_e_twins(&v)?;
                Output::json(&[a, b])
            } else {
                Output::json(&covers::specialize(*id, &v)?)
            }
        }
        Command::Lift { id, value } => Output::json(&covers::build_lift(*id, &parse_rat(value)?)?),
        Command::Analyze {
            id,
            value,
            lift,
            scan,
            primes,
        } => {
            let f = field(*id, &parse_rat(value)?, *lift, cfg.slow)?;
            if scan.is_some_and(|n| n > DESK_PRIMES) && !cfg.slow {
                return Err(Error::Unsupported(format!(
                    "scans above {DESK_PRIMES} primes need --slow"
                )));
            }
            let opts = AnalyzeOptions {
                primes: primes.clone(),
                scan: scan.map(|count| PrimeRange::FirstGood { count }),
                ..Default::default()
            };
            let report = ramify::analyze_specialized(&f, &opts)?;
            let mut out = Output::json(&report)?;
            if report.verdicts.indeterminate {
                out.status = Some(ErrorClass::Indeterminate);
            }
            Ok(out)
        }
        Command::Stats {
            id,
            value,
            lift,
            first,
            from,
            to,
            splitting,
        } => {
            let f = field(*id, &parse_rat(value)?, *lift, cfg.slow)?;
            let range = match (from, to) {
                (Some(lo), Some(hi)) => PrimeRange::Between { lo: *lo, hi: *hi },
                _ => PrimeRange::FirstGood { count: *first },
            };
            if matches!(range, PrimeRange::FirstGood { count } if count > DESK_PRIMES) && !cfg.slow
            {
                return Err(Error::Unsupported(format!(
                    "scans above {DESK_PRIMES} primes need --slow"
                )));
            }
            let stat = ramify::partition_scan(&f.poly, &range)?;
            let model = match (f.degree, &f.caveat) {
                (_, Some(_)) => None,
                (12, _) => Some(GroupModel::from_table(ModelKind::M12)),
                (24, _) => Some(GroupModel::from_table(ModelKind::M12Ext)),
                (48, _) => Some(GroupModel::from_table(ModelKind::DoubleM12Ext)),
                _ => None,
            };
            let drop = match model {
                Some(m) if stat.scanned() >= ramify::stats::MIN_PRIMES => {
                    Some(ramify::drop_detect(&stat, &m)?)
                }
                _ => None,
            };
            let splitting = match (splitting, from, to) {
                (true, Some(lo), Some(hi)) => Some(ramify::splitting_primes(&f.poly, *lo, *hi)),
                (true, _, _) => {
                    return Err(Error::Precondition(
                        "--splitting needs --from and --to".into(),
                    ));
                }
                _ => None,
            };
            Output::json(&StatsOut {
                source: format!("{id}({value})"),
                stat,
                drop,
                splitting,
            })
        }
        Command::Search { triple, s, h, json } => {
            let t: Triple = triple.parse()?;
            let s = specsets::parse_prime_set(s)?;
            let h = parse_height(h)?;
            let (points, warning) = cache::search_cached(t, &s, h)?;
            if let Some(w) = warning {
                eprintln!("warning: {w}");
            }
            if *json {
                Output::json(&points)
            } else {
                Ok(Output {
                    text: cache::render(t, &s, h, &points),
                    status: None,
                })
            }
        }
        Command::Validate { value, triple, s } => {
            let t: Triple = triple.parse()?;
            let s = specsets::parse_prime_set(s)?;
            Output::json(&specsets::validate_membership(&parse_rat(value)?, t, &s)?)
        }
        Command::Classify { value, p, cover } => {
            let v = parse_rat(value)?;
            if !m12_core::exactnum::is_prime_u64(*p) {
                return Err(Error::Parse(format!("{p} is not prime")));
            }
            let conv = match cover {
                Some(id) => CuspConvention::of(covers::spec(*id)?.param),
                None => CuspConvention::Standard,
            };
            let arm = specsets::classify_arm(&v, *p, conv)?;
            let predicted = match cover {
                Some(id) if !covers::spec(*id)?.bad_primes().contains(p) => {
                    Some(specsets::predict_tame(*id, &v, *p)?)
                }
                _ => None,
            };
            Output::json(&json!({ "arm": arm, "predicted_disc_valuation": predicted }))
        }
        Command::Verify { id } => {
            let r = verify_monodromy(id.name())?;
            let mut out = Output::json(&r)?;
            if !r.all_passed() {
                out.status = Some(ErrorClass::Math);
            }
            Ok(out)
        }
        Command::Hilbert { a, b, v } => {
            let (a, b) = (parse_rat(a)?, parse_rat(b)?);
            let place: Place = v.parse()?;
            let symbol = obstruct::hilbert_symbol(&a, &b, place)?;
            Output::json(
                &json!({ "a": a.to_string(), "b": b.to_string(), "place": place, "symbol": symbol }),
            )
        }
        Command::Obstruct { id, tau } => {
            let rule = obstruct::conjugation_obstruction(*id);
            let local = match (rule, tau) {
                (obstruct::ConjugationVerdict::LocalSymbols, Some(t)) => {
                    Some(obstruct::b_cover_obstruction(&parse_rat(t)?)?)
                }
                (obstruct::ConjugationVerdict::LocalSymbols, None) => {
                    return Err(Error::Precondition(format!("cover {id} needs --tau")));
                }
                _ => None,
            };
            Output::json(&json!({
                "cover": id.name(),
                "rule": rule,
                "summary": rule.describe(),
                "local": local,
            }))
        }
        Command::Report { id, values, csv } => {
            let mut reports = Vec::new();
            for v in values {
                let f = field(*id, &parse_rat(v)?, false, cfg.slow)?;
                reports.push(ramify::analyze_specialized(&f, &AnalyzeOptions::default())?);
            }
            if *csv {
                let mut text = String::from("source,degree,disc,rd\n");
                for r in &reports {
                    text.push_str(&format!(
                        "{},{},{},{:.1}\n",
                        r.source,
                        r.degree,
                        r.disc_string(),
                        r.rd
                    ));
                }
                Ok(Output { text, status: None })
            } else {
                Output::json(&reports)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heights() {
        assert_eq!(parse_height("1e6").unwrap(), 1_000_000);
        assert_eq!(parse_height("10^12").unwrap(), 1_000_000_000_000);
        assert_eq!(parse_height("250").unwrap(), 250);
        assert!(parse_height("1e40").is_err());
        assert!(parse_height("ten").is_err());
    }
}
