//! JSON instance documents:
//!
//! ```json
//! { "set": [0.001, "4"], "target": 4.001, "params": { "offset_k_quanta": 2 } }
//! ```
//!
//! Numbers may be JSON numbers or strings; both are read as exact decimals.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

use super::{PhysicalParams, RawInstance};
use crate::decimal::Decimal;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceDocument {
    pub raw: RawInstance,
    /// Defaults with any `params` overrides applied.
    pub params: PhysicalParams,
}

const PARAM_FIELDS: &[&str] = &[
    "delay_quantum_s",
    "light_speed_m_s",
    "velocity_factor",
    "offset_k_quanta",
    "source_power_w",
    "splitter_transmission",
    "detector_gain",
    "detection_threshold_w",
];

fn literal(v: &Value, field: &str) -> Result<String> {
    match v {
        // With arbitrary precision enabled this is the literal as written.
        Value::Number(n) => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        other => Err(Error::Document(format!(
            "`{field}` must be a number or decimal string, found {other}"
        ))),
    }
}

fn rational(v: &Value, field: &str) -> Result<BigRational> {
    Ok(Decimal::parse(&literal(v, field)?)?.to_rational())
}

pub fn parse_instance_document(text: &str) -> Result<InstanceDocument> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::Document("top level must be a JSON object".into()))?;

    for key in obj.keys() {
        if !matches!(key.as_str(), "set" | "target" | "params") {
            return Err(Error::Document(format!("unknown field `{key}`")));
        }
    }

    let set = obj
        .get("set")
        .ok_or_else(|| Error::Document("missing field `set`".into()))?
        .as_array()
        .ok_or_else(|| Error::Document("`set` must be an array".into()))?;
    let values = set
        .iter()
        .enumerate()
        .map(|(i, v)| literal(v, &format!("set[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let target = literal(
        obj.get("target")
            .ok_or_else(|| Error::Document("missing field `target`".into()))?,
        "target",
    )?;

    let mut params = PhysicalParams::default();
    if let Some(p) = obj.get("params") {
        let p = p
            .as_object()
            .ok_or_else(|| Error::Document("`params` must be an object".into()))?;
        apply_overrides(&mut params, p)?;
    }
    params.validate()?;

    Ok(InstanceDocument {
        raw: RawInstance { values, target },
        params,
    })
}

fn apply_overrides(params: &mut PhysicalParams, fields: &Map<String, Value>) -> Result<()> {
    for (key, value) in fields {
        let field = format!("params.{key}");
        match key.as_str() {
            "delay_quantum_s" => params.delay_quantum_s = rational(value, &field)?,
            "light_speed_m_s" => params.light_speed_m_s = rational(value, &field)?,
            "velocity_factor" => params.velocity_factor = rational(value, &field)?,
            "source_power_w" => params.source_power_w = rational(value, &field)?,
            "splitter_transmission" => params.splitter_transmission = rational(value, &field)?,
            "detector_gain" => params.detector_gain = rational(value, &field)?,
            "detection_threshold_w" => params.detection_threshold_w = rational(value, &field)?,
            "offset_k_quanta" => {
                let k = rational(value, &field)?;
                params.offset_k_quanta = k
                    .is_integer()
                    .then(|| k.to_integer().to_u64())
                    .flatten()
                    .ok_or_else(|| Error::InvalidValue(format!("{field} must be a positive integer")))?;
            }
            _ => {
                return Err(Error::Document(format!(
                    "unknown parameter `{key}` (expected one of {})",
                    PARAM_FIELDS.join(", ")
                )))
            }
        }
    }
    Ok(())
}
