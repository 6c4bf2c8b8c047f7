//! Wire formats for weights and interval sets.
//!
//! Weight files:        `{"breakpoints": ["0","1/2","1"], "values": ["2","1"]}`
//! Interval-set files:  `{"host": ["0","1"], "components": [["1/10","3/10"]]}`
//!
//! Every scalar is a rational string, either `"p/q"` or a decimal; emitted
//! files always use the canonical `"p/q"` form so a round trip is
//! byte-stable.

use serde_json::{json, Value};

use crate::covering::IntervalSet;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::weight::StepWeight;

fn parse_value(doc: &str) -> Result<Value> {
    serde_json::from_str(doc).map_err(|e| Error::Json(e.to_string()))
}

fn rational_field(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Json(format!("expected a rational string, got {other}"))),
    }
}

fn rational_array(v: &Value, field: &str) -> Result<Vec<Rational>> {
    v.get(field)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json(format!("missing array field {field:?}")))?
        .iter()
        .map(rational_field)
        .collect()
}

/// Parses the weight file format.
pub fn weight_from_json(doc: &str) -> Result<StepWeight> {
    let v = parse_value(doc)?;
    let breakpoints = rational_array(&v, "breakpoints")?;
    let values = rational_array(&v, "values")?;
    StepWeight::new(breakpoints, values)
}

/// Emits the weight file format (canonical rational strings).
pub fn weight_to_json(w: &StepWeight) -> String {
    let breakpoints: Vec<String> = w.breakpoints().iter().map(format_rational).collect();
    let values: Vec<String> = w.values().iter().map(format_rational).collect();
    json!({ "breakpoints": breakpoints, "values": values }).to_string()
}

/// Parses the interval-set file format.
pub fn interval_set_from_json(doc: &str) -> Result<IntervalSet> {
    let v = parse_value(doc)?;
    let host = v
        .get("host")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Json("missing two-element \"host\" array".into()))?;
    let host = Interval::new(rational_field(&host[0])?, rational_field(&host[1])?)?;
    let comps = v
        .get("components")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json("missing array field \"components\"".into()))?;
    let mut components = Vec::with_capacity(comps.len());
    for c in comps {
        let pair = c
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Json("components must be [lo, hi] pairs".into()))?;
        components.push((rational_field(&pair[0])?, rational_field(&pair[1])?));
    }
    IntervalSet::new(host, components)
}

/// Emits the interval-set file format.
pub fn interval_set_to_json(set: &IntervalSet) -> String {
    let host = vec![
        format_rational(set.host().lo()),
        format_rational(set.host().hi()),
    ];
    let components: Vec<Vec<String>> = set
        .components()
        .iter()
        .map(|(lo, hi)| vec![format_rational(lo), format_rational(hi)])
        .collect();
    json!({ "host": host, "components": components }).to_string()
}
