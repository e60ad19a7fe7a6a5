//! Cable-cut error experiments.
//!
//! Lengths are tracked in micro-quanta (one millionth of the quantum length),
//! so every perturbed arrival time is an exact integer and classification is
//! reproducible. A ray counts as detected when it lands in the closed window
//! of total width one quantum centred on `B + n·k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decimal::pow10;
use crate::error::{Error, Result};
use crate::model::{DeviceLayout, Instance, PhysicalParams};
use crate::oracles::OracleConfig;
use crate::serde_util;

pub const MICRO_UNITS_PER_QUANTUM: i128 = 1_000_000;

/// Detection window half-width, micro-quanta.
const WINDOW_RADIUS: i128 = MICRO_UNITS_PER_QUANTUM / 2;

/// Largest device the perturbed search accepts (two halves of `2^20` paths).
pub const PERTURB_MAX_STAGES: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerturbationReport {
    pub trials: u32,
    pub misclassified: u32,
    pub false_positives: u32,
    pub false_negatives: u32,
    /// Largest deviation of any path's arrival time from its nominal value.
    #[serde(serialize_with = "serde_util::rational")]
    pub max_arrival_error_s: BigRational,
}

/// Does any path land inside the detection window when arc `i`'s lengths
/// are off by `arc_errors[i] = (skip_error, take_error)` micro-quanta?
pub fn detect_perturbed(
    layout: &DeviceLayout,
    instance: &Instance,
    arc_errors: &[(i128, i128)],
) -> Result<bool> {
    let n = layout.stages().len();
    if arc_errors.len() != n || instance.len() != n {
        return Err(Error::StageMismatch {
            expected: n,
            found: arc_errors.len().min(instance.len()),
        });
    }
    if n > PERTURB_MAX_STAGES {
        return Err(Error::ResourceLimit(format!(
            "perturbed search supports at most {PERTURB_MAX_STAGES} stages, got {n}"
        )));
    }
    let arcs: Vec<(i128, i128)> = layout
        .stages()
        .iter()
        .zip(arc_errors)
        .map(|(s, &(es, et))| {
            (
                s.skip_delay as i128 * MICRO_UNITS_PER_QUANTUM + es,
                s.take_delay as i128 * MICRO_UNITS_PER_QUANTUM + et,
            )
        })
        .collect();
    if let Some(i) = arcs.iter().position(|&(a, b)| a <= 0 || b <= 0) {
        return Err(Error::InvalidPerturbation(format!(
            "stage {i} has a non-positive cable length"
        )));
    }
    let moment =
        (instance.target() as i128 + n as i128 * layout.offset_k() as i128) * MICRO_UNITS_PER_QUANTUM;
    Ok(window_hit(&arcs, moment - WINDOW_RADIUS, moment + WINDOW_RADIUS))
}

/// Meet in the middle over the two halves of the stage chain. All lengths
/// are positive, so partial sums past `hi` are dropped early.
fn window_hit(arcs: &[(i128, i128)], lo: i128, hi: i128) -> bool {
    let (left, right) = arcs.split_at(arcs.len() / 2);
    let left = path_sums(left, hi);
    let mut right = path_sums(right, hi);
    right.sort_unstable();
    left.iter().any(|&l| {
        let i = right.partition_point(|&r| r < lo - l);
        right.get(i).is_some_and(|&r| r <= hi - l)
    })
}

fn path_sums(arcs: &[(i128, i128)], cap: i128) -> Vec<i128> {
    let mut sums = vec![0i128];
    for &(a, b) in arcs {
        let mut next = Vec::with_capacity(sums.len() * 2);
        for &s in &sums {
            for d in [a, b] {
                if s + d <= cap {
                    next.push(s + d);
                }
            }
        }
        sums = next;
    }
    sums
}

/// Largest `|sum of errors|` over all paths: pick per stage whichever arc
/// pushes further in one direction.
fn max_path_error(arc_errors: &[(i128, i128)]) -> i128 {
    let up: i128 = arc_errors.iter().map(|&(a, b)| a.max(b)).sum();
    let down: i128 = arc_errors.iter().map(|&(a, b)| a.min(b)).sum();
    up.abs().max(down.abs())
}

fn to_micro_units(length_m: &BigRational, params: &PhysicalParams) -> BigRational {
    length_m * pow10(6) / params.quantum_length_m()
}

/// [`perturb_and_classify_with_offset`] without a systematic offset.
pub fn perturb_and_classify(
    layout: &DeviceLayout,
    instance: &Instance,
    params: &PhysicalParams,
    max_error_m: &BigRational,
    trials: u32,
    rng_seed: u64,
) -> Result<PerturbationReport> {
    perturb_and_classify_with_offset(
        layout,
        instance,
        params,
        max_error_m,
        &BigRational::zero(),
        trials,
        rng_seed,
    )
}

/// Runs `trials` independent cuts of every cable. Each cable's length error
/// is `offset_m` plus a uniform draw from `[-max_error_m, +max_error_m]`
/// (quantized to micro-quanta), and each trial's detection is compared with
/// the classical answer.
pub fn perturb_and_classify_with_offset(
    layout: &DeviceLayout,
    instance: &Instance,
    params: &PhysicalParams,
    max_error_m: &BigRational,
    offset_m: &BigRational,
    trials: u32,
    rng_seed: u64,
) -> Result<PerturbationReport> {
    if max_error_m.is_negative() {
        return Err(Error::InvalidValue("max_error_m must be non-negative".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidValue("at least one trial is required".into()));
    }
    let n = layout.stages().len();
    if n > PERTURB_MAX_STAGES {
        return Err(Error::ResourceLimit(format!(
            "perturbed search supports at most {PERTURB_MAX_STAGES} stages, got {n}"
        )));
    }

    let too_large = || Error::InvalidPerturbation("error magnitude exceeds the cable lengths".into());
    let spread: i128 = to_micro_units(max_error_m, params)
        .floor()
        .to_integer()
        .to_i64()
        .ok_or_else(too_large)?
        .into();
    let offset: i128 = to_micro_units(offset_m, params)
        .round()
        .to_integer()
        .to_i64()
        .ok_or_else(too_large)?
        .into();

    let shortest = layout
        .stages()
        .iter()
        .map(|s| s.skip_delay.min(s.take_delay))
        .min()
        .map(|d| BigInt::from(d) * BigInt::from(MICRO_UNITS_PER_QUANTUM));
    if let Some(shortest) = shortest {
        if shortest + BigInt::from(offset) - BigInt::from(spread) <= BigInt::zero() {
            return Err(Error::InvalidPerturbation(
                "the error range can make a cable length non-positive".into(),
            ));
        }
    }

    let truth = OracleConfig::default().solve_auto(instance)?.verdict.is_yes();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut report = PerturbationReport {
        trials,
        misclassified: 0,
        false_positives: 0,
        false_negatives: 0,
        max_arrival_error_s: BigRational::zero(),
    };
    let mut worst = 0i128;
    let mut errors = Vec::with_capacity(n);
    for _ in 0..trials {
        errors.clear();
        for _ in 0..n {
            let skip = offset + rng.random_range(-spread..=spread);
            let take = offset + rng.random_range(-spread..=spread);
            errors.push((skip, take));
        }
        worst = worst.max(max_path_error(&errors));
        let detected = detect_perturbed(layout, instance, &errors)?;
        match (detected, truth) {
            (true, false) => report.false_positives += 1,
            (false, true) => report.false_negatives += 1,
            _ => {}
        }
    }
    report.misclassified = report.false_positives + report.false_negatives;
    report.max_arrival_error_s = BigRational::from_integer(worst.into()) * &params.delay_quantum_s / pow10(6);
    Ok(report)
}
