//! Text and JSON rendering of results.

use frobenius_core::exact::fmt_rational;
use frobenius_core::{BigInt, Embedding, RingElement};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

/// A computed value, before formatting.
#[derive(Debug, Clone)]
pub enum Quantity {
    Int(BigInt),
    Elem(RingElement),
    Ints(Vec<u64>),
}

impl Quantity {
    pub fn text(&self) -> String {
        match self {
            Quantity::Int(n) => n.to_string(),
            Quantity::Elem(e) => e.to_string(),
            Quantity::Ints(v) => v.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
        }
    }

    /// Integers (and integral rational elements) become strings; anything
    /// else is written as ring plus coefficient vector.
    pub fn json(&self) -> Value {
        match self {
            Quantity::Int(n) => Value::String(n.to_string()),
            Quantity::Ints(v) => Value::Array(v.iter().map(|n| Value::String(n.to_string())).collect()),
            Quantity::Elem(e) => match e.to_rational() {
                Some(q) if q.is_integer() => Value::String(q.to_integer().to_string()),
                _ => elem_json(e),
            },
        }
    }

    pub fn numeric(&self, embedding: &Embedding) -> Option<(f64, f64)> {
        match self {
            Quantity::Int(n) => Some((n.to_f64()?, 0.0)),
            Quantity::Elem(e) => e.numeric(embedding).ok().map(|z| (z.re, z.im)),
            Quantity::Ints(_) => None,
        }
    }
}

pub fn elem_json(e: &RingElement) -> Value {
    let strs = |v: &[frobenius_core::BigRational]| -> Value {
        Value::Array(v.iter().map(|q| Value::String(fmt_rational(q))).collect())
    };
    json!({
        "ring": { "minpoly": strs(e.ring().minpoly().coeffs()) },
        "coeffs": strs(e.coeffs()),
    })
}

/// One JSON Lines record.
pub fn record(generators: &[u64], query: Map<String, Value>, method: &str, value: Value, numeric: Option<(f64, f64)>) -> Value {
    let mut obj = json!({
        "generators": generators,
        "query": query,
        "method": method,
        "value": value,
    });
    if let Some((re, im)) = numeric {
        obj["numeric"] = json!({ "re": re, "im": im });
    }
    obj
}

pub fn fmt_numeric((re, im): (f64, f64)) -> String {
    if im == 0.0 {
        format!("{re:.12e}")
    } else {
        let sign = if im < 0.0 { '-' } else { '+' };
        format!("{re:.12e} {sign} {:.12e}i", im.abs())
    }
}
