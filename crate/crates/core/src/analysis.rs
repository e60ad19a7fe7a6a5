//! Feasibility arithmetic for the physical device: how large the numbers can
//! be for a given cable, how much light reaches the detector, and how long
//! the answer takes to arrive.
//!
//! Everything is exact rational arithmetic. Boundary cases such as
//! `2^26 ≤ 10^8 < 2^27` are decided by comparison, never by logarithms.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Instance, PhysicalParams, Quanta};
use crate::serde_util;

/// Largest integer value a single cable of `max_cable_length_m` can encode.
pub fn max_encodable(max_cable_length_m: &BigRational, params: &PhysicalParams) -> Result<BigUint> {
    if !max_cable_length_m.is_positive() {
        return Err(Error::InvalidValue(format!(
            "cable length must be positive, got {max_cable_length_m}"
        )));
    }
    let quanta = (max_cable_length_m / params.quantum_length_m())
        .floor()
        .to_integer();
    Ok(quanta.to_biguint().expect("positive / positive is non-negative"))
}

/// Power carried by one ray after `n` splitters.
pub fn per_ray_power(n: usize, params: &PhysicalParams) -> BigRational {
    let ratio = &params.splitter_transmission / BigRational::from_integer(BigInt::from(2));
    &params.source_power_w * num_traits::pow(ratio, n)
}

/// Largest `n` for which a lone ray, amplified by the detector, still reaches
/// the detection threshold. Zero when even the unsplit beam falls short.
pub fn max_detectable_n(params: &PhysicalParams) -> u64 {
    let ratio = &params.splitter_transmission / BigRational::from_integer(BigInt::from(2));
    let mut signal = &params.detector_gain * &params.source_power_w;
    if signal < params.detection_threshold_w || ratio.is_zero() {
        return 0;
    }
    // ratio ≤ 1/2, so this halts after about log2(signal / threshold) steps.
    let mut n = 0;
    loop {
        signal *= &ratio;
        if signal < params.detection_threshold_w {
            return n;
        }
        n += 1;
    }
}

/// Source power needed for a lone ray through `n` splitters to reach the
/// detection threshold after amplification.
pub fn required_source_power(n: usize, params: &PhysicalParams) -> BigRational {
    let ratio = &params.splitter_transmission / BigRational::from_integer(BigInt::from(2));
    &params.detection_threshold_w / (&params.detector_gain * num_traits::pow(ratio, n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnswerTime {
    /// `B + n·k`, the moment the solution ray arrives.
    pub moment_quanta: Quanta,
    #[serde(serialize_with = "serde_util::rational")]
    pub seconds: BigRational,
    /// Total cable in the device, quanta: `Σ a_i + 2·n·k`.
    pub build_cost_quanta: Quanta,
    pub n_times_b: Quanta,
}

pub fn answer_time(instance: &Instance, params: &PhysicalParams) -> AnswerTime {
    let n = instance.len() as Quanta;
    let k = Quanta::from(params.offset_k_quanta);
    let moment = Quanta::from(instance.target()) + n * k;
    AnswerTime {
        moment_quanta: moment,
        seconds: BigRational::from_integer(BigInt::from(moment)) * &params.delay_quantum_s,
        build_cost_quanta: instance.sum() + 2 * n * k,
        n_times_b: n * Quanta::from(instance.target()),
    }
}

/// Slows light by `factor`. Delays in quanta are untouched; only the fiber
/// length per quantum shrinks.
pub fn slow_light_rescale(params: &PhysicalParams, factor: &BigRational) -> Result<PhysicalParams> {
    if !factor.is_positive() || *factor > BigRational::one() {
        return Err(Error::InvalidValue(format!(
            "slow-light factor must lie in (0, 1], got {factor}"
        )));
    }
    Ok(PhysicalParams {
        velocity_factor: &params.velocity_factor * factor,
        ..params.clone()
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    #[serde(serialize_with = "serde_util::biguint")]
    pub max_encodable_value: BigUint,
    #[serde(serialize_with = "serde_util::rational")]
    pub max_cable_length_m: BigRational,
    #[serde(serialize_with = "serde_util::rational")]
    pub quantum_length_m: BigRational,
    #[serde(serialize_with = "serde_util::rational")]
    pub answer_time_s: BigRational,
    pub max_detectable_n: u64,
    /// Source power needed for this instance's `n`.
    #[serde(serialize_with = "serde_util::rational")]
    pub required_source_power_w: BigRational,
}

pub fn feasibility(
    instance: &Instance,
    max_cable_length_m: &BigRational,
    params: &PhysicalParams,
) -> Result<FeasibilityReport> {
    Ok(FeasibilityReport {
        max_encodable_value: max_encodable(max_cable_length_m, params)?,
        max_cable_length_m: max_cable_length_m.clone(),
        quantum_length_m: params.quantum_length_m(),
        answer_time_s: answer_time(instance, params).seconds,
        max_detectable_n: max_detectable_n(params),
        required_source_power_w: required_source_power(instance.len(), params),
    })
}
