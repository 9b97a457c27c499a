//! JSON encodings shared by the library and the CLI.
//!
//! Integer matrices are arrays of arrays of JSON integers (arbitrary
//! precision). Rationals are reduced strings: "a/b" with b > 1, plain "n"
//! for integers, "0" for zero.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Number, Value};

use crate::bounds::BoundsReport;
use crate::correction::CorrectionTable;
use crate::diagram::{parse_pd, KnotDiagram};
use crate::error::{Error, Result};
use crate::form::{Definiteness, SymmetricForm};
use crate::group::CosetLabel;
use crate::matrix::IntMatrix;
use crate::obstruct::{GoeritzSource, ObstructionReport, Refutation, Sign, Verdict};
use crate::record::KnotRecord;

pub fn bigint_to_value(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}

pub fn value_to_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| Error::Parse(format!("expected integer, got {n}"))),
        other => Err(Error::Parse(format!("expected integer, got {other}"))),
    }
}

/// Reduced "a/b" string form of a rational.
pub fn rational_to_string(x: &BigRational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(numer)
        .map_err(|_| Error::Parse(format!("bad rational numerator {numer:?}")))?;
    let d = BigInt::from_str(denom)
        .map_err(|_| Error::Parse(format!("bad rational denominator {denom:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

pub fn matrix_to_value(m: &IntMatrix) -> Value {
    Value::Array(
        m.entries()
            .iter()
            .map(|row| Value::Array(row.iter().map(bigint_to_value).collect()))
            .collect(),
    )
}

pub fn value_to_matrix(v: &Value) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of arrays".into()))?;
    let parsed: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                .iter()
                .map(value_to_bigint)
                .collect()
        })
        .collect::<Result<_>>()?;
    IntMatrix::from_rows(parsed)
}

fn definiteness_str(d: Definiteness) -> &'static str {
    match d {
        Definiteness::NegativeDefinite => "negative_definite",
        Definiteness::PositiveDefinite => "positive_definite",
        Definiteness::Indefinite => "indefinite",
    }
}

pub fn form_to_value(f: &SymmetricForm) -> Value {
    json!({
        "rank": f.rank(),
        "entries": matrix_to_value(f.matrix()),
        "definiteness": definiteness_str(f.definiteness()),
    })
}

fn coset_to_value(c: &CosetLabel) -> Value {
    Value::Array(c.residues().iter().map(bigint_to_value).collect())
}

/// {"group": [d1,...], "rank": r, "values": [{"coset": [...], "m": "a/b"},...]}
/// with values sorted lexicographically by coset label.
pub fn table_to_value(t: &CorrectionTable) -> Value {
    let group: Vec<Value> = t
        .group()
        .invariant_factors()
        .iter()
        .map(bigint_to_value)
        .collect();
    let values: Vec<Value> = t
        .values()
        .iter()
        .map(|(g, v)| {
            json!({
                "coset": coset_to_value(g),
                "m": rational_to_string(v),
            })
        })
        .collect();
    json!({
        "group": group,
        "rank": t.rank(),
        "values": values,
    })
}

/// Same shape with every value replaced by its mod-2 representative.
pub fn mod2_map_to_value(
    t: &CorrectionTable,
    mod2: &std::collections::BTreeMap<CosetLabel, BigRational>,
) -> Value {
    let group: Vec<Value> = t
        .group()
        .invariant_factors()
        .iter()
        .map(bigint_to_value)
        .collect();
    let values: Vec<Value> = mod2
        .iter()
        .map(|(g, v)| {
            json!({
                "coset": coset_to_value(g),
                "m": rational_to_string(v),
            })
        })
        .collect();
    json!({
        "group": group,
        "rank": t.rank(),
        "values": values,
    })
}

pub fn record_to_value(r: &KnotRecord) -> Value {
    let mut map = Map::new();
    map.insert("name".into(), Value::String(r.name.clone()));
    if let Some(pd) = &r.pd {
        let tuples: Vec<Value> = pd
            .crossings()
            .iter()
            .map(|t| Value::Array(t.iter().map(|&x| json!(x)).collect()))
            .collect();
        map.insert("pd".into(), Value::Array(tuples));
    }
    if let Some(g) = &r.goeritz {
        map.insert("goeritz".into(), matrix_to_value(g));
    }
    if let Some(g) = &r.goeritz_mirror {
        map.insert("goeritz_mirror".into(), matrix_to_value(g));
    }
    map.insert("signature".into(), json!(r.signature));
    if let Some(d) = &r.determinant {
        map.insert("determinant".into(), bigint_to_value(d));
    }
    if let Some(t) = r.tau {
        map.insert("tau".into(), json!(t));
    }
    if let Some(s) = r.s {
        map.insert("s".into(), json!(s));
    }
    Value::Object(map)
}

pub fn value_to_record(v: &Value) -> Result<KnotRecord> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("knot record must be a JSON object".into()))?;
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("knot record needs a string \"name\"".into()))?
        .to_string();
    let signature = obj
        .get("signature")
        .and_then(Value::as_i64)
        .ok_or_else(|| Error::Parse("knot record needs an integer \"signature\"".into()))?;
    let pd = match obj.get("pd") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(parse_pd(s)?),
        Some(Value::Array(rows)) => {
            let mut tuples = Vec::new();
            for row in rows {
                let entries = row
                    .as_array()
                    .ok_or_else(|| Error::Parse("pd crossing must be an array".into()))?;
                if entries.len() != 4 {
                    return Err(Error::Parse("pd crossing needs 4 labels".into()));
                }
                let mut tup = [0usize; 4];
                for (i, e) in entries.iter().enumerate() {
                    tup[i] = e
                        .as_u64()
                        .ok_or_else(|| Error::Parse("pd labels are positive integers".into()))?
                        as usize;
                }
                tuples.push(tup);
            }
            Some(KnotDiagram::new(tuples)?)
        }
        Some(other) => return Err(Error::Parse(format!("bad pd field: {other}"))),
    };
    let matrix_field = |key: &str| -> Result<Option<IntMatrix>> {
        match obj.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => Ok(Some(value_to_matrix(v)?)),
        }
    };
    let record = KnotRecord {
        name,
        pd,
        goeritz: matrix_field("goeritz")?,
        goeritz_mirror: matrix_field("goeritz_mirror")?,
        signature,
        determinant: match obj.get("determinant") {
            None | Some(Value::Null) => None,
            Some(v) => Some(value_to_bigint(v)?),
        },
        tau: obj.get("tau").and_then(Value::as_i64),
        s: obj.get("s").and_then(Value::as_i64),
    };
    record.validate()?;
    Ok(record)
}

fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "+1",
        Sign::Minus => "-1",
    }
}

fn refutation_to_value(r: &Refutation) -> Value {
    match r {
        Refutation::GroupMismatch {
            candidate_factors,
            goeritz_factors,
        } => json!({
            "kind": "group_mismatch",
            "candidate_factors": candidate_factors.iter().map(bigint_to_value).collect::<Vec<_>>(),
            "goeritz_factors": goeritz_factors.iter().map(bigint_to_value).collect::<Vec<_>>(),
            "summary": r.to_string(),
        }),
        Refutation::Mod2Mismatch { missing } => json!({
            "kind": "mod2_multiset_mismatch",
            "missing_values": missing.iter().map(rational_to_string).collect::<Vec<_>>(),
            "summary": r.to_string(),
        }),
        Refutation::Exhausted { tried } => json!({
            "kind": "all_isomorphisms_fail",
            "isomorphisms_tried": tried,
            "summary": r.to_string(),
        }),
    }
}

fn source_to_value(s: &GoeritzSource) -> Value {
    match s {
        GoeritzSource::SuppliedMatrix => json!({"kind": "supplied_matrix"}),
        GoeritzSource::Diagram {
            mirrored,
            coloring_class,
            white_regions,
            deleted_region_min_edge,
        } => json!({
            "kind": "diagram",
            "mirrored": mirrored,
            "coloring_class": coloring_class,
            "white_regions": white_regions,
            "deleted_region_min_edge": deleted_region_min_edge,
        }),
    }
}

pub fn report_to_value(r: &ObstructionReport) -> Value {
    let mut map = Map::new();
    map.insert("knot".into(), Value::String(r.knot.clone()));
    map.insert("sign".into(), Value::String(sign_str(r.sign).into()));
    map.insert("determinant".into(), bigint_to_value(&r.determinant));
    map.insert("candidate_form".into(), form_to_value(&r.candidate));
    map.insert("goeritz_form".into(), form_to_value(&r.goeritz));
    map.insert("goeritz_source".into(), source_to_value(&r.goeritz_source));
    map.insert(
        "verdict".into(),
        Value::String(
            match r.verdict {
                Verdict::Obstructed => "obstructed",
                Verdict::NotObstructed => "not_obstructed",
            }
            .into(),
        ),
    );
    if let Some(w) = &r.witness {
        let images: Vec<Value> = w
            .iso
            .generator_images()
            .iter()
            .map(coset_to_value)
            .collect();
        let mut witness = Map::new();
        witness.insert("generator_images".into(), Value::Array(images));
        if let Some(u) = w.iso.as_unit_multiplier() {
            witness.insert("unit_multiplier".into(), bigint_to_value(u));
        }
        map.insert("witness".into(), Value::Object(witness));
    }
    if let Some(refutation) = &r.refutation {
        map.insert("refutation".into(), refutation_to_value(refutation));
    }
    map.insert("m_candidate".into(), table_to_value(&r.m_candidate));
    map.insert("m_goeritz".into(), table_to_value(&r.m_goeritz));
    Value::Object(map)
}

pub fn bounds_to_value(b: &BoundsReport) -> Value {
    let mut map = Map::new();
    map.insert("knot".into(), Value::String(b.knot.clone()));
    map.insert("q".into(), json!(b.q));
    if let Some(t) = b.tau_bound {
        map.insert("tau_bound".into(), json!(t));
    }
    if let Some(s) = b.s_bound {
        map.insert("s_bound".into(), json!(s));
    }
    map.insert("best".into(), json!(b.best));
    Value::Object(map)
}
