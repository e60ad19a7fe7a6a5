//! JSON encodings for exact quantities.

use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::decimal::rational_to_decimal;

/// Longest decimal literal emitted verbatim before falling back to `f64`.
const MAX_EXACT_LITERAL: usize = 48;

/// Writes an unbounded integer as a plain JSON number.
pub fn biguint<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    serde_json::Number::from_str(&value.to_str_radix(10))
        .map_err(serde::ser::Error::custom)?
        .serialize(s)
}

/// Writes a rational as its exact decimal when it terminates in a short
/// literal, otherwise as the nearest `f64`.
pub fn rational<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    if let Some(d) = rational_to_decimal(value) {
        let text = d.to_string();
        if text.len() <= MAX_EXACT_LITERAL {
            return serde_json::Number::from_str(&text)
                .map_err(serde::ser::Error::custom)?
                .serialize(s);
        }
    }
    s.serialize_f64(value.to_f64().unwrap_or(f64::NAN))
}
