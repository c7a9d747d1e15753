//! JSON file formats for embeddings and diagrams.
//!
//! Numbers are exact: an integer that fits in `i64` is written bare, a larger
//! one as a decimal string, and a non-integer as `[numerator, denominator]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::diagram::{Crossing, Diagram, Frame, Param, Provenance, Strand};
use crate::error::{Error, Result};
use crate::geometry::{Axis, Edge, Embedding, Point3, Rational};

pub const EMBEDDING_FORMAT: &str = "linkforge-embedding/1";
pub const DIAGRAM_FORMAT: &str = "linkforge-diagram/1";
pub const REPORT_FORMAT: &str = "linkforge-report/1";

fn bad(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn int_value(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    }
}

pub fn rational_to_value(r: &Rational) -> Value {
    if r.is_integer() {
        int_value(r.numer())
    } else {
        json!([int_value(r.numer()), int_value(r.denom())])
    }
}

fn value_to_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| bad(format!("not an integer: {n}"))),
        Value::String(s) => s.parse().map_err(|_| bad(format!("not an integer: {s:?}"))),
        _ => Err(bad(format!("expected an integer, got {v}"))),
    }
}

pub fn value_to_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Array(a) if a.len() == 2 => {
            let den = value_to_int(&a[1])?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rational::new(value_to_int(&a[0])?, den))
        }
        _ => Ok(Rational::from_integer(value_to_int(v)?)),
    }
}

fn point_to_value(p: &Point3) -> Value {
    json!([rational_to_value(&p.x), rational_to_value(&p.y), rational_to_value(&p.z)])
}

fn value_to_point(v: &Value) -> Result<Point3> {
    let a = v.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("a point needs 3 coordinates"))?;
    Ok(Point3::new(value_to_rational(&a[0])?, value_to_rational(&a[1])?, value_to_rational(&a[2])?))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn check_format(obj: &Value, expected: &str) -> Result<()> {
    match obj.get("format").and_then(Value::as_str) {
        Some(f) if f == expected => Ok(()),
        Some(f) => Err(bad(format!("unknown format {f:?}, expected {expected:?}"))),
        None => Err(bad("missing \"format\"")),
    }
}

fn parse_edge(s: &str) -> Result<Edge> {
    s.parse().map_err(|_| bad(format!("bad edge {s:?}")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

pub fn embedding_to_value(e: &Embedding) -> Value {
    let bends: Map<String, Value> = e
        .bends()
        .iter()
        .map(|(edge, pts)| (edge.to_string(), Value::Array(pts.iter().map(point_to_value).collect())))
        .collect();
    json!({
        "format": EMBEDDING_FORMAT,
        "n": e.n(),
        "coords": e.coords().iter().map(point_to_value).collect::<Vec<_>>(),
        "bends": bends,
    })
}

/// Compact canonical serialization.
pub fn embedding_to_json(e: &Embedding) -> String {
    embedding_to_value(e).to_string()
}

pub fn embedding_from_value(v: &Value) -> Result<Embedding> {
    check_format(v, EMBEDDING_FORMAT)?;
    let n = as_usize(field(v, "n")?, "n")?;
    let coords = field(v, "coords")?
        .as_array()
        .ok_or_else(|| bad("coords must be an array"))?
        .iter()
        .map(value_to_point)
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != n {
        return Err(bad(format!("n = {n} but {} coordinates given", coords.len())));
    }
    let mut bends = BTreeMap::new();
    if let Some(b) = v.get("bends") {
        for (k, pts) in b.as_object().ok_or_else(|| bad("bends must be an object"))? {
            let edge = parse_edge(k)?;
            let pts = pts
                .as_array()
                .ok_or_else(|| bad("bend list must be an array"))?
                .iter()
                .map(value_to_point)
                .collect::<Result<Vec<_>>>()?;
            if !pts.is_empty() {
                bends.insert(edge, pts);
            }
        }
    }
    Embedding::new(coords, bends)
}

pub fn embedding_from_json(text: &str) -> Result<Embedding> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    embedding_from_value(&v)
}

fn strand_to_value(s: &Strand) -> Value {
    json!({ "edge": s.edge.to_string(), "segment": s.param.segment, "frac": rational_to_value(&s.param.frac) })
}

fn value_to_strand(v: &Value) -> Result<Strand> {
    let edge = parse_edge(field(v, "edge")?.as_str().ok_or_else(|| bad("edge must be a string"))?)?;
    let segment = u32::try_from(as_usize(field(v, "segment")?, "segment")?).map_err(|_| bad("segment too large"))?;
    Ok(Strand { edge, param: Param::new(segment, value_to_rational(field(v, "frac")?)?) })
}

fn dir_to_value(d: &[Rational; 2]) -> Value {
    json!([rational_to_value(&d[0]), rational_to_value(&d[1])])
}

fn value_to_dir(v: &Value) -> Result<[Rational; 2]> {
    let a = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("a direction needs 2 entries"))?;
    Ok([value_to_rational(&a[0])?, value_to_rational(&a[1])?])
}

pub fn diagram_to_value(d: &Diagram) -> Value {
    let provenance = match d.provenance() {
        Provenance::Projection { axis, source } => {
            json!({ "kind": "projection", "axis": axis.letter().to_string(), "source": source })
        }
        Provenance::Synthetic => json!({ "kind": "synthetic" }),
    };
    let edges: Vec<Value> = d
        .edges_with_events()
        .map(|(e, evs)| json!({ "edge": e.to_string(), "crossings": evs.iter().map(|ev| ev.crossing).collect::<Vec<_>>() }))
        .collect();
    let crossings: Vec<Value> = d
        .crossings()
        .map(|c| {
            json!({
                "id": c.id,
                "over": strand_to_value(&c.over),
                "under": strand_to_value(&c.under),
                "frame": { "over": dir_to_value(&c.frame.over_dir), "under": dir_to_value(&c.frame.under_dir) },
                "sign": c.sign(),
            })
        })
        .collect();
    json!({
        "format": DIAGRAM_FORMAT,
        "n": d.n(),
        "provenance": provenance,
        "edges": edges,
        "crossings": crossings,
    })
}

pub fn diagram_to_json(d: &Diagram) -> String {
    diagram_to_value(d).to_string()
}

pub fn diagram_from_value(v: &Value) -> Result<Diagram> {
    check_format(v, DIAGRAM_FORMAT)?;
    let n = as_usize(field(v, "n")?, "n")?;
    let provenance = match v.get("provenance") {
        None => Provenance::Synthetic,
        Some(p) => match field(p, "kind")?.as_str() {
            Some("synthetic") => Provenance::Synthetic,
            Some("projection") => Provenance::Projection {
                axis: field(p, "axis")?.as_str().unwrap_or("").parse::<Axis>().map_err(|e| bad(e.to_string()))?,
                source: field(p, "source")?.as_str().ok_or_else(|| bad("source must be a string"))?.to_string(),
            },
            _ => return Err(bad("unknown provenance kind")),
        },
    };
    let mut crossings = Vec::new();
    for c in field(v, "crossings")?.as_array().ok_or_else(|| bad("crossings must be an array"))? {
        let frame = field(c, "frame")?;
        let frame = Frame { over_dir: value_to_dir(field(frame, "over")?)?, under_dir: value_to_dir(field(frame, "under")?)? };
        let crossing = Crossing {
            id: as_usize(field(c, "id")?, "id")?,
            over: value_to_strand(field(c, "over")?)?,
            under: value_to_strand(field(c, "under")?)?,
            frame,
        };
        if let Some(s) = c.get("sign") {
            if s.as_i64() != Some(crossing.sign() as i64) {
                return Err(bad(format!("crossing {} sign disagrees with its frame", crossing.id)));
            }
        }
        crossings.push(crossing);
    }
    let d = Diagram::from_crossings(n, provenance, crossings).map_err(|e| bad(e.to_string()))?;
    if let Some(edges) = v.get("edges").and_then(Value::as_array) {
        for entry in edges {
            let edge = parse_edge(field(entry, "edge")?.as_str().unwrap_or(""))?;
            let listed: Vec<usize> = field(entry, "crossings")?
                .as_array()
                .ok_or_else(|| bad("edge crossings must be an array"))?
                .iter()
                .map(|x| as_usize(x, "crossing id"))
                .collect::<Result<_>>()?;
            let actual: Vec<usize> = d.events(edge).iter().map(|ev| ev.crossing).collect();
            if listed != actual {
                return Err(bad(format!("edge {edge} lists crossings out of order")));
            }
        }
    }
    Ok(d)
}

pub fn diagram_from_json(text: &str) -> Result<Diagram> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    diagram_from_value(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{project, random_linear_embedding, ratio};

    #[test]
    fn numbers() {
        assert_eq!(rational_to_value(&ratio(4, 2)), json!(2));
        assert_eq!(rational_to_value(&ratio(-1, 3)), json!([-1, 3]));
        let big = Rational::from_integer(BigInt::from(i64::MAX) * 4);
        assert_eq!(rational_to_value(&big), json!("36893488147419103228"));
        for r in [ratio(7, 9), big, ratio(0, 1)] {
            assert_eq!(value_to_rational(&rational_to_value(&r)).unwrap(), r);
        }
        assert!(value_to_rational(&json!([1, 0])).is_err());
        assert!(value_to_rational(&json!(1.5)).is_err());
    }

    #[test]
    fn embedding_round_trip() {
        let e = random_linear_embedding(6, 1000, 3).unwrap();
        let text = embedding_to_json(&e);
        assert_eq!(embedding_from_json(&text).unwrap(), e);
        let mut bends = BTreeMap::new();
        bends.insert(Edge::new(0, 2), vec![Point3::new(ratio(1, 2), ratio(-3, 7), ratio(5, 1))]);
        let e = Embedding::new(e.coords().to_vec(), bends).unwrap();
        assert_eq!(embedding_from_json(&embedding_to_json(&e)).unwrap(), e);
    }

    #[test]
    fn rejects_unknown_format() {
        let text = r#"{"format":"linkforge-embedding/2","n":2,"coords":[[0,0,0],[1,1,1]]}"#;
        assert!(matches!(embedding_from_json(text), Err(Error::Format(_))));
        assert!(diagram_from_json(r#"{"n":3,"crossings":[]}"#).is_err());
        let e = random_linear_embedding(4, 100, 1).unwrap();
        assert!(diagram_from_json(&embedding_to_json(&e)).is_err());
    }

    #[test]
    fn diagram_round_trip_is_exact() {
        let e = random_linear_embedding(7, 1 << 40, 11).unwrap();
        let d = project(&e, Axis::Z).unwrap();
        let text = diagram_to_json(&d);
        let back = diagram_from_json(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(diagram_to_json(&back), text);
    }
}
