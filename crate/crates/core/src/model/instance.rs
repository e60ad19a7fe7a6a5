use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::decimal::{pow10, Decimal};
use crate::error::{Error, Result};

/// Default ceiling on any normalized value or target.
pub const DEFAULT_VALUE_CEILING: u64 = 1_000_000_000_000_000_000;

/// A subset-sum instance as supplied by the user: decimal literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInstance {
    pub values: Vec<String>,
    pub target: String,
}

impl RawInstance {
    pub fn new<S: Into<String>>(values: impl IntoIterator<Item = S>, target: impl Into<String>) -> Self {
        RawInstance {
            values: values.into_iter().map(Into::into).collect(),
            target: target.into(),
        }
    }
}

/// Exact factor `10^power_of_ten` taking raw values to integer quanta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Scale {
    pub power_of_ten: i64,
}

impl Scale {
    pub const ONE: Scale = Scale { power_of_ten: 0 };

    pub fn to_rational(self) -> BigRational {
        pow10(self.power_of_ten)
    }
}

/// Positive-integer subset-sum instance.
///
/// `values` are the set `A` in delay quanta and `target` is `B`. Instances
/// produced by [`normalize`] carry the canonical scale; [`Instance::new`]
/// builds integer instances directly with scale one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Instance {
    values: Vec<u64>,
    target: u64,
    scale: Scale,
}

impl Instance {
    pub fn new(values: Vec<u64>, target: u64) -> Result<Self> {
        if let Some(pos) = values.iter().position(|&v| v == 0) {
            return Err(Error::InvalidValue(format!(
                "value #{pos} is zero; all values must be positive"
            )));
        }
        Ok(Instance {
            values,
            target,
            scale: Scale::ONE,
        })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> u128 {
        self.values.iter().map(|&v| u128::from(v)).sum()
    }

    /// Same instance with a different target.
    pub fn with_target(&self, target: u64) -> Self {
        Instance {
            target,
            ..self.clone()
        }
    }

    /// Same instance with the values reordered.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Instance {
            values: order.iter().map(|&i| self.values[i]).collect(),
            ..self.clone()
        }
    }

    /// The integer instance written back as decimal literals.
    pub fn to_raw(&self) -> RawInstance {
        RawInstance::new(self.values.iter().map(u64::to_string), self.target.to_string())
    }
}

/// [`normalize_with_ceiling`] with [`DEFAULT_VALUE_CEILING`].
pub fn normalize(raw: &RawInstance) -> Result<Instance> {
    normalize_with_ceiling(raw, DEFAULT_VALUE_CEILING)
}

/// Scales all values and the target jointly by one power of ten so that
/// every number is an integer and the least significant nonzero digit of at
/// least one of them sits in the units position.
pub fn normalize_with_ceiling(raw: &RawInstance, ceiling: u64) -> Result<Instance> {
    let values = raw
        .values
        .iter()
        .map(|s| Decimal::parse(s))
        .collect::<Result<Vec<_>>>()?;
    let target = Decimal::parse(&raw.target)?;

    for (i, v) in values.iter().enumerate() {
        if !v.is_positive() {
            return Err(Error::InvalidValue(format!(
                "value #{i} ({}) must be strictly positive",
                raw.values[i].trim()
            )));
        }
    }
    if target.is_negative() {
        return Err(Error::InvalidValue(format!(
            "target ({}) must be non-negative",
            raw.target.trim()
        )));
    }

    // Zero carries no digits and does not constrain the scale.
    let power_of_ten = values
        .iter()
        .chain(std::iter::once(&target))
        .filter(|d| !d.is_zero())
        .map(Decimal::exponent)
        .min()
        .map_or(0, |e| -e);

    let scale_to_int = |d: &Decimal, what: &dyn Fn() -> String| -> Result<u64> {
        if d.is_zero() {
            return Ok(0);
        }
        let shift = d.exponent() + power_of_ten;
        debug_assert!(shift >= 0);
        // Cheap digit-count guard before materializing huge powers of ten.
        if d.digit_count() as i64 + shift > 20 {
            return Err(Error::Overflow(format!(
                "{} exceeds the ceiling {ceiling}",
                what()
            )));
        }
        let scaled: BigInt = d.mantissa() * num_traits::pow(BigInt::from(10u8), shift as usize);
        scaled
            .to_u64()
            .filter(|v| *v <= ceiling)
            .ok_or_else(|| Error::Overflow(format!("{} exceeds the ceiling {ceiling}", what())))
    };

    let ints = values
        .iter()
        .enumerate()
        .map(|(i, v)| scale_to_int(v, &|| format!("scaled value #{i}")))
        .collect::<Result<Vec<_>>>()?;
    let target = scale_to_int(&target, &|| "scaled target".to_owned())?;
    debug_assert!(ints.iter().all(|v| !v.is_zero()));

    Ok(Instance {
        values: ints,
        target,
        scale: Scale { power_of_ten },
    })
}
