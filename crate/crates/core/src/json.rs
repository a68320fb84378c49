//! JSON readers and writers for sets, representations and hives.
//!
//! Integers whose magnitude exceeds 2^53 - 1 are written as decimal strings; readers
//! accept either form.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{malformed, Error, Result};
use crate::hives::HiveLabeling;
use crate::mconvex::{sub, MConvexSet, Point};
use crate::representations::Representation;
use crate::tracts::{format_rational, parse_rational, TractId};

const SAFE_INT: i64 = (1 << 53) - 1;

pub fn int_to_json(v: i64) -> Value {
    if v.abs() > SAFE_INT {
        Value::String(v.to_string())
    } else {
        Value::from(v)
    }
}

pub fn int_from_json(v: &Value) -> Result<i64> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .ok_or_else(|| Error::Malformed(format!("not an integer: {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Malformed(format!("not an integer: {s:?}"))),
        other => malformed(format!("expected integer, got {other}")),
    }
}

pub fn point_to_json(p: &[i64]) -> Value {
    Value::Array(p.iter().map(|&x| int_to_json(x)).collect())
}

pub fn point_from_json(v: &Value) -> Result<Point> {
    let Value::Array(xs) = v else {
        return malformed(format!("expected integer array, got {v}"));
    };
    xs.iter().map(int_from_json).collect()
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Malformed(format!("missing field {key:?}")))
}

/// A point list as read from disk, before any M-convexity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPoints {
    pub n: usize,
    pub r: Option<i64>,
    pub points: Vec<Point>,
}

pub fn raw_points_from_json(v: &Value) -> Result<RawPoints> {
    if !v.is_object() {
        return malformed("expected a JSON object");
    }
    let Value::Array(bs) = field(v, "bases")? else {
        return malformed("\"bases\" must be an array");
    };
    let points = bs.iter().map(point_from_json).collect::<Result<Vec<_>>>()?;
    let n = match v.get("n") {
        Some(n) => {
            usize::try_from(int_from_json(n)?).map_err(|_| Error::Malformed("negative n".into()))?
        }
        None => points
            .first()
            .map(|p| p.len())
            .ok_or_else(|| Error::Malformed("cannot infer n".into()))?,
    };
    let r = v.get("r").map(int_from_json).transpose()?;
    Ok(RawPoints { n, r, points })
}

pub fn set_to_json(j: &MConvexSet) -> Value {
    json!({
        "n": j.n(),
        "r": int_to_json(j.r()),
        "bases": j.bases().iter().map(|p| point_to_json(p)).collect::<Vec<_>>(),
    })
}

pub fn set_from_json(v: &Value) -> Result<MConvexSet> {
    let raw = raw_points_from_json(v)?;
    match raw.r {
        Some(r) => MConvexSet::with_rank(raw.n, r, raw.points),
        None => MConvexSet::new(raw.n, raw.points),
    }
}

/// Values are keyed by bases of J (not of its reduction).
pub fn representation_to_json(rho: &Representation) -> Value {
    let t = rho.tract();
    let dm = rho.set().delta_minus();
    let values: Vec<Value> = rho
        .entries()
        .map(|(p, u)| {
            let basis: Point = p.iter().zip(&dm).map(|(a, b)| a + b).collect();
            json!({"basis": point_to_json(&basis), "value": t.format_unit(u)})
        })
        .collect();
    json!({"tract": t.name(), "set": set_to_json(rho.set()), "values": values})
}

pub fn representation_from_json(v: &Value) -> Result<Representation> {
    let Value::String(name) = field(v, "tract")? else {
        return malformed("\"tract\" must be a string");
    };
    let tract = TractId::parse(name)?;
    let set = set_from_json(field(v, "set")?)?;
    let Value::Array(vals) = field(v, "values")? else {
        return malformed("\"values\" must be an array");
    };
    let dm = set.delta_minus();
    let mut entries = Vec::with_capacity(vals.len());
    for e in vals {
        let basis = point_from_json(field(e, "basis")?)?;
        if basis.len() != set.n() {
            return malformed(format!("basis {basis:?} has the wrong length"));
        }
        let value = match field(e, "value")? {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            other => return malformed(format!("bad value {other}")),
        };
        match tract.parse_unit(&value)? {
            Some(u) => entries.push((sub(&basis, &dm), u)),
            None => return Err(Error::SupportMismatch),
        }
    }
    Representation::new(set, tract, entries)
}

fn rational_to_json(x: &num_rational::BigRational) -> Value {
    if x.is_integer() {
        if let Ok(v) = i64::try_from(x.numer()) {
            return int_to_json(v);
        }
    }
    Value::String(format_rational(x))
}

fn vertex_key(p: &[i64]) -> String {
    format!("({},{},{})", p[0], p[1], p[2])
}

pub fn hive_to_json(h: &HiveLabeling) -> Value {
    let labels: Map<String, Value> = h
        .labels
        .iter()
        .map(|(p, x)| (vertex_key(p), rational_to_json(x)))
        .collect();
    json!({"r": h.r, "labels": labels})
}

pub fn hive_from_json(v: &Value) -> Result<HiveLabeling> {
    let r = int_from_json(field(v, "r")?)?;
    let Value::Object(m) = field(v, "labels")? else {
        return malformed("\"labels\" must be an object");
    };
    let mut labels = BTreeMap::new();
    for (k, x) in m {
        let inner = k
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Malformed(format!("bad vertex key {k:?}")))?;
        let p = inner
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Malformed(format!("bad vertex key {k:?}")))
            })
            .collect::<Result<Point>>()?;
        if p.len() != 3 || p.iter().sum::<i64>() != r || p.iter().any(|&c| c < 0) {
            return malformed(format!("vertex {k} is not on the hive triangle"));
        }
        let val = match x {
            Value::String(s) => parse_rational(s)?,
            _ => num_rational::BigRational::from_integer(int_from_json(x)?.into()),
        };
        labels.insert(p, val);
    }
    Ok(HiveLabeling::new(r, labels))
}

pub fn to_string(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(format!("invalid JSON: {e}")))
}
