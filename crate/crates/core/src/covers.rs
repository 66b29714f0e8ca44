//! The cover catalog: printed equations, Table-2 metadata, specialization,
//! E twins and the degree-48 lift constructions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{parse_rat, Int, QuadElt, Rat};
use crate::partition::Partition;
use crate::permgrp::PartitionTriple;
use crate::polyalg::{
    charpoly_resultant, ddf_partition, factor_rational, parse_expr, IntPoly, QuadPoly,
};

const CATALOG: &str = include_str!("../data/covers.txt");
const FIXTURES: &str = include_str!("../data/fixtures.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoverId {
    A,
    B,
    Bt,
    C,
    D,
    E,
    A2,
    C2,
    D2,
    E2,
}

impl CoverId {
    pub const ALL: [CoverId; 10] = [
        CoverId::A,
        CoverId::B,
        CoverId::Bt,
        CoverId::C,
        CoverId::D,
        CoverId::E,
        CoverId::A2,
        CoverId::C2,
        CoverId::D2,
        CoverId::E2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoverId::A => "A",
            CoverId::B => "B",
            CoverId::Bt => "Bt",
            CoverId::C => "C",
            CoverId::D => "D",
            CoverId::E => "E",
            CoverId::A2 => "A2",
            CoverId::C2 => "C2",
            CoverId::D2 => "D2",
            CoverId::E2 => "E2",
        }
    }

    /// The degree-12 cover underneath a rationalized one.
    pub fn base(self) -> CoverId {
        match self {
            CoverId::A2 => CoverId::A,
            CoverId::C2 => CoverId::C,
            CoverId::D2 => CoverId::D,
            CoverId::E2 => CoverId::E,
            c => c,
        }
    }
}

impl fmt::Display for CoverId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoverId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let k = s.trim().replace('^', "").to_ascii_uppercase();
        Ok(match k.as_str() {
            "A" => CoverId::A,
            "B" => CoverId::B,
            "BT" => CoverId::Bt,
            "C" => CoverId::C,
            "D" => CoverId::D,
            "E" => CoverId::E,
            "A2" => CoverId::A2,
            "C2" => CoverId::C2,
            "D2" => CoverId::D2,
            "E2" => CoverId::E2,
            _ => return Err(Error::UnknownCover(s.to_string())),
        })
    }
}

/// Least ramified behaviour of a bad prime under specialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Behavior {
    Unramified,
    Tame,
    Wild,
}

/// How the parameter line is coordinatized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ParamKind {
    /// Critical values `0, 1, inf`.
    T,
    /// Critical values `-sqrt 5, sqrt 5, inf` (covers B, Bt).
    S5,
    /// Critical values `-sqrt -11, sqrt -11, inf` (cover E).
    S11,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LiftKind {
    /// `f(t, y^2)`.
    Square,
    /// Resultant with `y^2 - 2h(x)`.
    Resultant,
    None,
}

#[derive(Debug, Clone)]
enum Source {
    /// Coefficients `[k][i] = (a, b)` of `t^k x^i` as `a + b sqrt(field)`.
    Printed(Vec<Vec<(Rat, Rat)>>),
    Norm(CoverId),
    Twins(CoverId),
}

#[derive(Debug, Clone)]
pub struct CoverSpec {
    pub id: CoverId,
    /// `d` of the base field `Q(sqrt d)`; 1 for `Q`.
    pub field: i64,
    pub param: ParamKind,
    pub degree: usize,
    pub triple: PartitionTriple,
    pub bad: Vec<(u64, Behavior)>,
    pub group: String,
    pub twin: Option<CoverId>,
    pub lift: LiftKind,
    /// Text as printed (absent for derived covers).
    pub equation: Option<String>,
    source: Source,
}

impl CoverSpec {
    /// The extra bad prime `q`.
    pub fn q(&self) -> u64 {
        self.bad[2].0
    }

    pub fn bad_primes(&self) -> Vec<u64> {
        self.bad.iter().map(|b| b.0).collect()
    }

    pub fn is_rational(&self) -> bool {
        self.field == 1
    }
}

fn parse_records(text: &str) -> Result<Vec<(String, BTreeMap<String, String>)>> {
    let mut out: Vec<(String, BTreeMap<String, String>)> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            out.push((name.to_string(), BTreeMap::new()));
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Catalog(format!("line {}: expected key = value", ln + 1)))?;
        let rec = out
            .last_mut()
            .ok_or_else(|| Error::Catalog(format!("line {}: field outside a record", ln + 1)))?;
        rec.1.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn get<'a>(rec: &'a BTreeMap<String, String>, name: &str, key: &str) -> Result<&'a str> {
    rec.get(key)
        .map(|s| s.as_str())
        .ok_or_else(|| Error::Catalog(format!("record {name}: missing {key}")))
}

fn check_digits(name: &str, got: &[u64], want: &str) -> Result<()> {
    let want: std::result::Result<Vec<u64>, _> =
        want.split_whitespace().map(|w| w.parse::<u64>()).collect();
    let want = want.map_err(|_| Error::Catalog(format!("record {name}: bad digits line")))?;
    if want != got {
        return Err(Error::Catalog(format!(
            "record {name}: checksum mismatch, file says {want:?}, text gives {got:?}"
        )));
    }
    Ok(())
}

fn load_catalog() -> Result<BTreeMap<CoverId, CoverSpec>> {
    let mut out: BTreeMap<CoverId, CoverSpec> = BTreeMap::new();
    for (name, rec) in parse_records(CATALOG)? {
        let id: CoverId = name.parse()?;
        let field: i64 = get(&rec, &name, "field")?
            .parse()
            .map_err(|_| Error::Catalog(format!("record {name}: bad field")))?;
        let param = match get(&rec, &name, "param")? {
            "t" => ParamKind::T,
            "s" if id.base() == CoverId::E => ParamKind::S11,
            "s" => ParamKind::S5,
            p => return Err(Error::Catalog(format!("record {name}: bad param {p}"))),
        };
        let degree: usize = get(&rec, &name, "degree")?
            .parse()
            .map_err(|_| Error::Catalog(format!("record {name}: bad degree")))?;
        let group = get(&rec, &name, "group")?.to_string();
        let twin = rec.get("twin").map(|t| t.parse()).transpose()?;
        let lift = match get(&rec, &name, "lift")? {
            "square" => LiftKind::Square,
            "resultant" => LiftKind::Resultant,
            _ => LiftKind::None,
        };
        let (source, equation) = if let Some(src) = rec.get("poly") {
            let vars: Vec<&str> = get(&rec, &name, "vars")?.split_whitespace().collect();
            let parsed = parse_expr(src, &vars, &[])?;
            check_digits(&name, &parsed.term_digit_sums, get(&rec, &name, "digits")?)?;
            let poly = parsed.poly;
            let (np, nx) = (poly.degree_in(0) as usize, poly.degree_in(1) as usize);
            let mut co = vec![vec![(Rat::zero(), Rat::zero()); nx + 1]; np + 1];
            let d = Rat::from_integer(Int::from(field));
            for (e, c) in poly.terms() {
                let ue = if vars.len() > 2 { e[2] } else { 0 };
                let scale = num_traits::pow(d.clone(), (ue / 2) as usize);
                let slot = &mut co[e[0] as usize][e[1] as usize];
                if ue % 2 == 0 {
                    slot.0 += c * scale;
                } else {
                    slot.1 += c * scale;
                }
            }
            (Source::Printed(co), Some(src.clone()))
        } else {
            let d = get(&rec, &name, "derive")?;
            let (how, from) = d
                .split_once(' ')
                .ok_or_else(|| Error::Catalog(format!("record {name}: bad derive")))?;
            let from: CoverId = from.parse()?;
            match how {
                "norm" => (Source::Norm(from), None),
                "twins" => (Source::Twins(from), None),
                _ => return Err(Error::Catalog(format!("record {name}: bad derive {how}"))),
            }
        };
        let (triple, bad) = match &source {
            Source::Norm(from) => {
                let b = out.get(from).ok_or_else(|| {
                    Error::Catalog(format!("record {name}: {from} must come first"))
                })?;
                let t = &b.triple;
                (
                    PartitionTriple::new(t.l0.doubled(), t.l1.doubled(), t.linf.doubled()),
                    b.bad.clone(),
                )
            }
            _ => {
                let t: Vec<&str> = get(&rec, &name, "triple")?
                    .split(';')
                    .map(|s| s.trim())
                    .collect();
                if t.len() != 3 {
                    return Err(Error::Catalog(format!(
                        "record {name}: triple needs three parts"
                    )));
                }
                let triple = PartitionTriple::parse(t[0], t[1], t[2])?;
                let mut bad = Vec::new();
                for item in get(&rec, &name, "bad")?.split_whitespace() {
                    let (p, b) = item
                        .split_once(':')
                        .ok_or_else(|| Error::Catalog(format!("record {name}: bad tag {item}")))?;
                    let p: u64 = p
                        .parse()
                        .map_err(|_| Error::Catalog(format!("record {name}: bad prime {p}")))?;
                    let b = match b {
                        "U" => Behavior::Unramified,
                        "T" => Behavior::Tame,
                        "W" => Behavior::Wild,
                        _ => return Err(Error::Catalog(format!("record {name}: bad tag {b}"))),
                    };
                    bad.push((p, b));
                }
                (triple, bad)
            }
        };
        if triple.degree() as usize != degree {
            return Err(Error::Catalog(format!(
                "record {name}: triple does not match degree {degree}"
            )));
        }
        out.insert(
            id,
            CoverSpec {
                id,
                field,
                param,
                degree,
                triple,
                bad,
                group,
                twin,
                lift,
                equation,
                source,
            },
        );
    }
    Ok(out)
}

fn catalog_cell() -> &'static std::result::Result<BTreeMap<CoverId, CoverSpec>, String> {
    static CELL: OnceLock<std::result::Result<BTreeMap<CoverId, CoverSpec>, String>> =
        OnceLock::new();
    CELL.get_or_init(|| load_catalog().map_err(|e| e.to_string()))
}

/// The whole catalog, loaded and checksummed once.
pub fn catalog() -> Result<&'static BTreeMap<CoverId, CoverSpec>> {
    catalog_cell()
        .as_ref()
        .map_err(|e| Error::Catalog(e.clone()))
}

pub fn spec(id: CoverId) -> Result<&'static CoverSpec> {
    catalog()?
        .get(&id)
        .ok_or_else(|| Error::Catalog(format!("cover {id} missing from catalog")))
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecializedField {
    pub cover: CoverId,
    #[serde(serialize_with = "ser_rat")]
    pub value: Rat,
    #[serde(serialize_with = "ser_poly")]
    pub poly: IntPoly,
    pub degree: usize,
    /// Set for lifts whose Galois group is known to exceed the target.
    pub caveat: Option<String>,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_poly<S: serde::Serializer>(p: &IntPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_text())
}

fn quad_d(field: i64) -> Int {
    Int::from(field)
}

/// `f(value, x)` for a printed cover, as rational `(a, b)` pairs.
fn printed_at(spec: &CoverSpec, value: &Rat) -> Result<Vec<(Rat, Rat)>> {
    let Source::Printed(co) = &spec.source else {
        return Err(Error::Unsupported(format!(
            "cover {} has no printed equation",
            spec.id
        )));
    };
    let nx = co.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut out = vec![(Rat::zero(), Rat::zero()); nx];
    let mut pk = Rat::one();
    for row in co {
        for (i, (a, b)) in row.iter().enumerate() {
            out[i].0 += a * &pk;
            out[i].1 += b * &pk;
        }
        pk *= value;
    }
    while out.last().is_some_and(|(a, b)| a.is_zero() && b.is_zero()) {
        out.pop();
    }
    Ok(out)
}

/// `f_L(value, x)` over `Q(sqrt d)` for `L` in `A, C, D`.
pub fn specialize_quad(id: CoverId, value: &Rat) -> Result<QuadPoly> {
    let s = spec(id)?;
    if s.is_rational() {
        return Err(Error::Unsupported(format!("cover {id} is defined over Q")));
    }
    check_cusp(s, value)?;
    let co = printed_at(s, value)?;
    let a: Vec<Rat> = co.iter().map(|c| c.0.clone()).collect();
    let b: Vec<Rat> = co.iter().map(|c| c.1.clone()).collect();
    Ok(QuadPoly::from_parts(&quad_d(s.field), &a, &b))
}

/// Rational coefficients of the printed equation at `value`, with no
/// denominators cleared (covers over `Q` only).
pub fn specialize_raw(id: CoverId, value: &Rat) -> Result<Vec<Rat>> {
    let s = spec(id)?;
    if !s.is_rational() {
        return Err(Error::Unsupported(format!(
            "cover {id} is not defined over Q"
        )));
    }
    Ok(printed_at(s, value)?.into_iter().map(|c| c.0).collect())
}

fn check_cusp(s: &CoverSpec, value: &Rat) -> Result<()> {
    if s.param == ParamKind::T && (value.is_zero() || value.is_one()) {
        return Err(Error::Cusp {
            cover: s.id.to_string(),
            value: value.to_string(),
        });
    }
    Ok(())
}

fn finish(
    id: CoverId,
    value: &Rat,
    poly: IntPoly,
    caveat: Option<String>,
) -> Result<SpecializedField> {
    if !poly.is_squarefree() {
        return Err(Error::NotSeparable {
            cover: id.to_string(),
            value: value.to_string(),
        });
    }
    let degree = poly.deg();
    Ok(SpecializedField {
        cover: id,
        value: value.clone(),
        poly,
        degree,
        caveat,
    })
}

/// The primitive integral polynomial `f_L(value, x)`.
///
/// Covers over `Q(sqrt d)` are refused; use their rationalized forms
/// `A2`, `C2`, `D2`. Cover `E` goes through [`specialize_e_twins`].
pub fn specialize(id: CoverId, value: &Rat) -> Result<SpecializedField> {
    let s = spec(id)?;
    check_cusp(s, value)?;
    let poly = match &s.source {
        Source::Printed(_) if s.is_rational() => IntPoly::from_rats(&specialize_raw(id, value)?),
        Source::Printed(_) => {
            return Err(Error::Unsupported(format!(
                "cover {id} is defined over Q(sqrt {}); specialize {id}2 instead",
                s.field
            )))
        }
        Source::Norm(from) => specialize_quad(*from, value)?.norm_rationalize(),
        Source::Twins(from) => {
            return Err(Error::Unsupported(format!(
                "cover {id} is reached through {from}; use specialize_e_twins(s)"
            )))
        }
    };
    if poly.deg() != s.degree {
        return Err(Error::Degenerate(format!(
            "{id} at {value} has degree {} instead of {}",
            poly.deg(),
            s.degree
        )));
    }
    finish(id, value, poly, None)
}

/// The twin pair `{K(E,s), K(E,-s)}` read off `f_E2(1 + s^2/11, x)`.
pub fn specialize_e_twins(s: &Rat) -> Result<(SpecializedField, SpecializedField)> {
    if s.is_zero() {
        return Err(Error::Cusp {
            cover: "E".into(),
            value: "0".into(),
        });
    }
    let t = Rat::one() + s * s / Rat::from_integer(Int::from(11));
    let big = specialize(CoverId::E2, &t)?;
    let fac = factor_rational(&big.poly)?;
    let degs: Vec<usize> = fac.iter().map(|(g, e)| g.deg() * *e as usize).collect();
    if fac.len() != 2 || degs != [12, 12] {
        return Err(Error::Reducible(degs));
    }
    let mut it = fac.into_iter().map(|(g, _)| g);
    let (f1, f2) = (
        it.next().expect("two factors"),
        it.next().expect("two factors"),
    );
    Ok((
        finish(CoverId::E, s, f1, None)?,
        finish(CoverId::E, &-s, f2, None)?,
    ))
}

/// The double cover of `X_D` is `x = c y^2` with this `c = (11 - sqrt(-11))/2`.
/// With `c = 1` the norm polynomial has Frobenius patterns outside
/// `2.M12.2` (e.g. `4^12` over class 4C); with this `c` it reproduces the
/// printed `~D2` fixture.
pub fn d_lift_twist() -> QuadElt {
    let d = Int::from(-11);
    QuadElt::new(
        d,
        Rat::new(11.into(), 2.into()),
        Rat::new((-1).into(), 2.into()),
    )
}

const A_LIFT_CAVEAT: &str =
    "rationalized f_A(t,y^2) has generic group of shape 2^2.M12.2, not 2.M12.2";

/// The monic sextic `P6` with `f_C(1, x) = 16 P6(x)^2`.
pub fn c_p6() -> Result<QuadPoly> {
    let f1 = specialize_quad_unchecked(CoverId::C, &Rat::one())?;
    let m = f1.monic();
    m.sqrt()
        .map(|p| p.monic())
        .ok_or_else(|| Error::Catalog("f_C(1,x) is not a constant times a square".into()))
}

fn specialize_quad_unchecked(id: CoverId, value: &Rat) -> Result<QuadPoly> {
    let s = spec(id)?;
    let co = printed_at(s, value)?;
    let a: Vec<Rat> = co.iter().map(|c| c.0.clone()).collect();
    let b: Vec<Rat> = co.iter().map(|c| c.1.clone()).collect();
    Ok(QuadPoly::from_parts(&quad_d(s.field), &a, &b))
}

/// Candidate readings of `2h(x)` for the cover-C lift, labelled.
///
/// Four come from the printed `h` with its two garbled monomials read
/// either way; the last is `2h = 4 P6` from the double fibre over `t = 1`.
pub fn c_lift_candidates() -> Result<Vec<(String, QuadPoly)>> {
    let base = "2*x^6+22*x^5*u-165*x^4*u-957*x^4+4664*x^3+4884*x^2*u+17754*x^2+4686*x*u-15114*x+385*u+1243";
    let mut out = Vec::new();
    for (l5, t5) in [("-22x^5", "-22*x^5"), ("no x^5 term", "0")] {
        for (l3, t3) in [("-1804x^3u", "-1804*x^3*u"), ("-1804x^3", "-1804*x^3")] {
            let src = format!("2*({base}+{t5}+{t3})");
            let p = parse_expr(&src, &["x", "u"], &[])?.poly;
            let nx = p.degree_in(0) as usize;
            let (mut a, mut b) = (vec![Rat::zero(); nx + 1], vec![Rat::zero(); nx + 1]);
            for (e, c) in p.terms() {
                let scale = num_traits::pow(Rat::from_integer(Int::from(-11)), (e[1] / 2) as usize);
                if e[1] % 2 == 0 {
                    a[e[0] as usize] += c * scale;
                } else {
                    b[e[0] as usize] += c * scale;
                }
            }
            out.push((
                format!("printed h, {l5}, {l3}"),
                QuadPoly::from_parts(&Int::from(-11), &a, &b),
            ));
        }
    }
    let four = QuadElt::from_rat(&Int::from(-11), Rat::from_integer(Int::from(4)));
    out.push(("2h = 4 P6, f_C(1,x) = 16 P6^2".into(), c_p6()?.scale(&four)));
    Ok(out)
}

/// `Res_x(y^2 - alpha(x), f_C(value, x))`, rationalized: degree 48.
pub fn c_lift_with(alpha: &QuadPoly, value: &Rat) -> Result<IntPoly> {
    let f = specialize_quad(CoverId::C, value)?;
    let r = charpoly_resultant(alpha, &f);
    Ok(r.substitute_square().norm_rationalize())
}

/// Index into [`c_lift_candidates`] of the reading used by [`build_lift`].
pub const C_LIFT_READING: usize = 4;

/// Scores each reading of `h` by agreement of mod-`p` factorization
/// patterns with the printed lift at `5^3/2^2`, over the first `n_primes`
/// primes good for both. Returns `(label, agreeing, compared)`.
pub fn score_c_lift_readings(n_primes: usize) -> Result<Vec<(String, usize, usize)>> {
    let printed = fixture("~C2(5^3/2^2)")?.poly.clone();
    let tau = parse_rat("5^3/2^2")?;
    let mut out = Vec::new();
    for (label, alpha) in c_lift_candidates()? {
        let g = c_lift_with(&alpha, &tau)?;
        let (mut agree, mut compared) = (0, 0);
        let mut p = 101u64;
        while compared < n_primes && p < 100_000 {
            if crate::exactnum::is_prime_u64(p) {
                if let (Some(a), Some(b)) = (ddf_partition(&printed, p), ddf_partition(&g, p)) {
                    compared += 1;
                    if a == b {
                        agree += 1;
                    }
                }
            }
            p += 2;
        }
        out.push((label, agree, compared));
    }
    Ok(out)
}

/// Degree-48 lift polynomial for `A2`, `C2` or `D2` at `value`.
pub fn build_lift(id: CoverId, value: &Rat) -> Result<SpecializedField> {
    let (poly, caveat) = match id {
        CoverId::D2 => {
            let f = specialize_quad(CoverId::D, value)?;
            (f.substitute_scaled_square(&d_lift_twist()).norm_rationalize(), None)
        }
        CoverId::A2 => {
            let f = specialize_quad(CoverId::A, value)?;
            (f.substitute_square().norm_rationalize(), Some(A_LIFT_CAVEAT.to_string()))
        }
        CoverId::C2 => {
            let (_, alpha) = c_lift_candidates()?.swap_remove(C_LIFT_READING);
            check_cusp(spec(CoverId::C)?, value)?;
            (c_lift_with(&alpha, value)?, None)
        }
        CoverId::B | CoverId::Bt => {
            return Err(Error::Unsupported(format!(
                "cover {id} has no lift defined over Q; lifts exist only for individual unobstructed specializations"
            )))
        }
        other => return Err(Error::Unsupported(format!("no lift construction for cover {other}"))),
    };
    if poly.deg() != 48 {
        return Err(Error::Degenerate(format!(
            "lift of {id} at {value} has degree {}",
            poly.deg()
        )));
    }
    finish(id, value, poly, caveat)
}

/// A printed polynomial, verbatim.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub key: String,
    pub note: Option<String>,
    /// `(cover, parameter)` when the field is a printed specialization.
    pub source: Option<(CoverId, Rat)>,
    pub var: String,
    pub poly: IntPoly,
}

fn load_fixtures() -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    for (key, rec) in parse_records(FIXTURES)? {
        let var = get(&rec, &key, "var")?.to_string();
        let mut consts: Vec<(String, Rat)> = Vec::new();
        if let Some(c) = rec.get("consts") {
            for item in c.split_whitespace() {
                let (n, v) = item
                    .split_once('=')
                    .ok_or_else(|| Error::Catalog(format!("fixture {key}: bad const {item}")))?;
                consts.push((n.to_string(), parse_rat(v)?));
            }
        }
        let cref: Vec<(&str, Rat)> = consts
            .iter()
            .map(|(n, v)| (n.as_str(), v.clone()))
            .collect();
        let parsed = parse_expr(get(&rec, &key, "poly")?, &[var.as_str()], &cref)?;
        check_digits(&key, &parsed.term_digit_sums, get(&rec, &key, "digits")?)?;
        let co = parsed.poly.univariate(0)?;
        if co.iter().any(|c| !c.is_integer()) {
            return Err(Error::Catalog(format!(
                "fixture {key}: non-integral coefficient"
            )));
        }
        let poly = IntPoly::new(co.into_iter().map(|c| c.to_integer()).collect());
        let source = match rec.get("source") {
            Some(s) => {
                let (c, v) = s
                    .split_once(' ')
                    .ok_or_else(|| Error::Catalog(format!("fixture {key}: bad source")))?;
                Some((c.parse()?, parse_rat(v)?))
            }
            None => None,
        };
        out.push(Fixture {
            key,
            note: rec.get("note").cloned(),
            source,
            var,
            poly,
        });
    }
    Ok(out)
}

/// All printed polynomials.
pub fn fixtures() -> Result<&'static [Fixture]> {
    static CELL: OnceLock<std::result::Result<Vec<Fixture>, String>> = OnceLock::new();
    CELL.get_or_init(|| load_fixtures().map_err(|e| e.to_string()))
        .as_deref()
        .map_err(|e| Error::Catalog(e.clone()))
}

pub fn fixture(key: &str) -> Result<&'static Fixture> {
    fixtures()?
        .iter()
        .find(|f| f.key == key)
        .ok_or_else(|| Error::Catalog(format!("no fixture {key}")))
}

/// One row of the lift table: degree-24 partition triple and printed genus.
#[derive(Debug, Clone, Serialize)]
pub struct LiftRow {
    pub label: &'static str,
    pub triple: PartitionTriple,
    pub genus: i64,
}

/// Lifted partition triples with their printed genera.
pub fn lift_triples() -> Vec<LiftRow> {
    let rows: [(&str, &str, &str, &str, i64); 6] = [
        ("~A", "3^8", "2^8 1^8", "(20)4", 0),
        ("~B", "4^4 2^2 1^4", "4^4 2^2 1^4", "(20)4", 2),
        ("~Bt", "4^4 2^4", "4^4 2^4", "(20)4", 4),
        ("~C", "3^6 1^6", "4^6", "11^2 1^2", 2),
        ("~D", "3^8", "2^8 1^8", "(22)2", 0),
        ("~E", "3^6 1^6", "3^6 1^6", "12^2", 0),
    ];
    rows.iter()
        .map(|&(label, a, b, c, genus)| LiftRow {
            label,
            triple: PartitionTriple::parse(a, b, c).expect("static partition data"),
            genus,
        })
        .collect()
}

/// `f_B(s, x)` discriminant check helper: discriminant of a rational
/// polynomial (no denominators cleared).
pub fn rat_discriminant(c: &[Rat]) -> Rat {
    let den = c.iter().fold(Int::one(), |acc, r| {
        num_integer::lcm(acc, r.denom().clone())
    });
    let ints: Vec<Int> = c
        .iter()
        .map(|r| (r * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let g = IntPoly::new(ints);
    let n = g.deg() as u32;
    if n == 0 {
        return Rat::one();
    }
    Rat::new(g.discriminant(), num_traits::pow(den, (2 * n - 2) as usize))
}

/// `ord_p` of a partition-triple prediction is in [`crate::specsets`]; this
/// returns the Table-2 partition of the cusp `k` (0, 1, inf as 0, 1, 2).
pub fn cusp_partition(id: CoverId, k: usize) -> Result<Partition> {
    Ok(spec(id)?.triple.get(k).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn catalog_loads() {
        let c = catalog().unwrap();
        assert_eq!(c.len(), 10);
        assert_eq!(spec(CoverId::B).unwrap().q(), 5);
        assert_eq!(spec(CoverId::D).unwrap().q(), 11);
        assert_eq!(
            spec(CoverId::D2).unwrap().triple.to_string(),
            "(3^8; 2^8 1^8; 11^2 1^2)"
        );
        assert_eq!("B^t".parse::<CoverId>().unwrap(), CoverId::Bt);
    }

    #[test]
    fn fixtures_load() {
        assert_eq!(fixture("~D2(2087^3/2^6*3^15*11)").unwrap().poly.deg(), 48);
        assert!(fixture("~B(5)").unwrap().poly.is_even());
    }

    #[test]
    fn specialize_basics() {
        let f = specialize(CoverId::B, &rat(5, 1)).unwrap();
        assert_eq!(f.degree, 12);
        assert!(matches!(
            specialize(CoverId::D2, &rat(0, 1)),
            Err(Error::Cusp { .. })
        ));
        let g = specialize(CoverId::D2, &rat(7, 1)).unwrap();
        assert_eq!(g.degree, 24);
    }
}
