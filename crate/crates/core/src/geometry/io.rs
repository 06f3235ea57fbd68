//! JSON embedding files.
//!
//! ```json
//! {"n": 6, "graph": "complete", "vertices": [[1,1,1], [[1,2],4,8], ...],
//!  "edges": {"1-2": [[0,5,5], [1,6,5]]}}
//! ```
//!
//! Coordinates are integers or `[numerator, denominator]` pairs; integers
//! too large for JSON numbers may be given as decimal strings. Vertices are
//! 1-based in edge keys and interior points run from the first vertex of the
//! key to the second. `graph` defaults to `complete`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use super::embedding::{EmbeddingError, SpatialEmbedding};
use super::rational::RationalPoint3;
use crate::combinatorics::{complete_graph, k331_graph, GraphKind};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid embedding file: {0}")]
    Schema(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

fn schema(msg: impl Into<String>) -> FormatError {
    FormatError::Schema(msg.into())
}

fn parse_int(v: &Value) -> Result<BigInt, FormatError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(schema(format!("non-integer number {n}")))
            }
        }
        Value::String(s) => s.trim().parse().map_err(|_| schema(format!("bad integer {s:?}"))),
        other => Err(schema(format!("expected an integer, got {other}"))),
    }
}

fn parse_rational(v: &Value) -> Result<BigRational, FormatError> {
    match v {
        Value::Array(pair) if pair.len() == 2 => {
            let num = parse_int(&pair[0])?;
            let den = parse_int(&pair[1])?;
            if den.is_zero() {
                return Err(schema("zero denominator"));
            }
            Ok(BigRational::new(num, den))
        }
        other => Ok(BigRational::from_integer(parse_int(other)?)),
    }
}

fn parse_point(v: &Value) -> Result<RationalPoint3, FormatError> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| schema("a point needs 3 coordinates"))?;
    Ok(RationalPoint3::new(
        parse_rational(&arr[0])?,
        parse_rational(&arr[1])?,
        parse_rational(&arr[2])?,
    ))
}

pub fn embedding_from_json(text: &str) -> Result<SpatialEmbedding, FormatError> {
    let root: Value = serde_json::from_str(text)?;
    let obj = root.as_object().ok_or_else(|| schema("top level must be an object"))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| schema("missing integer field n"))? as usize;
    let graph = match obj.get("graph").and_then(Value::as_str).unwrap_or("complete") {
        "complete" => complete_graph(n).map_err(EmbeddingError::from)?,
        "k331" => {
            if n != 7 {
                return Err(schema("k331 embeddings have n = 7"));
            }
            k331_graph()
        }
        other => return Err(schema(format!("unknown graph kind {other:?}"))),
    };
    let vertices = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("missing vertices array"))?
        .iter()
        .map(parse_point)
        .collect::<Result<Vec<_>, _>>()?;
    let mut paths = BTreeMap::new();
    if let Some(edges) = obj.get("edges") {
        let edges = edges.as_object().ok_or_else(|| schema("edges must be an object"))?;
        for (key, pts) in edges {
            let (a, b) = key
                .split_once('-')
                .ok_or_else(|| schema(format!("bad edge key {key:?}")))?;
            let parse_v = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1 && v <= n)
                    .ok_or_else(|| schema(format!("bad vertex in edge key {key:?}")))
            };
            let (a, b) = (parse_v(a)? - 1, parse_v(b)? - 1);
            let interior = pts
                .as_array()
                .ok_or_else(|| schema("edge paths must be arrays of points"))?
                .iter()
                .map(parse_point)
                .collect::<Result<Vec<_>, _>>()?;
            if !interior.is_empty() {
                paths.insert((a, b), interior);
            }
        }
    }
    Ok(SpatialEmbedding::new(graph, vertices, paths)?)
}

fn write_int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    }
}

fn write_rational(r: &BigRational) -> Value {
    if r.is_integer() {
        write_int(r.numer())
    } else {
        json!([write_int(r.numer()), write_int(r.denom())])
    }
}

fn write_point(p: &RationalPoint3) -> Value {
    Value::Array(p.coords().iter().map(|c| write_rational(c)).collect())
}

/// Canonical JSON value with sorted keys.
pub fn embedding_to_value(e: &SpatialEmbedding) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), json!(e.graph().vertex_count()));
    let kind = match e.graph().kind() {
        GraphKind::K331 => "k331",
        _ => "complete",
    };
    obj.insert("graph".into(), json!(kind));
    obj.insert(
        "vertices".into(),
        Value::Array(e.positions().iter().map(write_point).collect()),
    );
    let mut edges = Map::new();
    for (i, &(a, b)) in e.graph().edges().iter().enumerate() {
        let path = e.edge_path(i);
        if !path.is_empty() {
            edges.insert(
                format!("{}-{}", a + 1, b + 1),
                Value::Array(path.iter().map(write_point).collect()),
            );
        }
    }
    if !edges.is_empty() {
        obj.insert("edges".into(), Value::Object(edges));
    }
    Value::Object(obj)
}

pub fn embedding_to_json(e: &SpatialEmbedding) -> String {
    let mut s = serde_json::to_string_pretty(&embedding_to_value(e)).expect("JSON values always serialize");
    s.push('\n');
    s
}
