use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::ArrivalProfile;
use crate::analysis::per_ray_power;
use crate::error::{Error, Result};
use crate::model::{Instance, PhysicalParams, Quanta};
use crate::serde_util;
use crate::verdict::Verdict;

/// Reading of the destination photodetector at `B + n·k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetectionReport {
    pub verdict: Verdict,
    pub checked_moment: Quanta,
    #[serde(serialize_with = "serde_util::biguint")]
    pub ray_count_at_moment: BigUint,
    #[serde(serialize_with = "serde_util::rational")]
    pub per_ray_power_w: BigRational,
    #[serde(serialize_with = "serde_util::rational")]
    pub amplified_power_w: BigRational,
    pub detectable: bool,
}

pub fn detect(
    profile: &ArrivalProfile,
    instance: &Instance,
    params: &PhysicalParams,
) -> Result<DetectionReport> {
    let n = instance.len();
    if profile.stage_index() != n {
        return Err(Error::StageMismatch {
            expected: n,
            found: profile.stage_index(),
        });
    }
    let k = Quanta::from(params.offset_k_quanta);
    let empty_set_moment = n as Quanta * k;
    // The empty subset always arrives first; anything else means the profile
    // was built with a different offset than `params` describes.
    if profile.earliest() != Some(empty_set_moment) {
        return Err(Error::InvalidValue(format!(
            "profile starts at {:?} but offset k = {k} puts the empty set at {empty_set_moment}",
            profile.earliest()
        )));
    }

    let checked_moment = Quanta::from(instance.target()) + empty_set_moment;
    let count = profile.count_at(checked_moment);
    let per_ray = per_ray_power(n, params);
    let amplified = &params.detector_gain * BigRational::from_integer(count.clone().into()) * &per_ray;
    let verdict = Verdict::from(!count.is_zero());
    let detectable = verdict.is_yes() && amplified >= params.detection_threshold_w;

    Ok(DetectionReport {
        verdict,
        checked_moment,
        ray_count_at_moment: count,
        per_ray_power_w: per_ray,
        amplified_power_w: amplified,
        detectable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::compile;
    use crate::sim::propagate;
    use num_traits::One;

    fn run(values: Vec<u64>, target: u64, params: &PhysicalParams) -> DetectionReport {
        let inst = Instance::new(values, target).unwrap();
        let profile = propagate(&compile(&inst, params).unwrap());
        detect(&profile, &inst, params).unwrap()
    }

    #[test]
    fn yes_instance() {
        let r = run(vec![1, 2, 3], 5, &PhysicalParams::default());
        assert_eq!(r.verdict, Verdict::Yes);
        assert_eq!(r.checked_moment, 8);
        assert!(r.ray_count_at_moment >= BigUint::one());
    }

    #[test]
    fn empty_set_answers_zero_target() {
        let p = PhysicalParams::default().with_offset_k(3);
        let r = run(vec![4, 7, 9], 0, &p);
        assert_eq!(r.verdict, Verdict::Yes);
        assert_eq!(r.checked_moment, 9);
        assert_eq!(r.ray_count_at_moment, BigUint::one());
    }

    #[test]
    fn no_instance() {
        let r = run(vec![2, 4], 3, &PhysicalParams::default());
        assert_eq!(r.verdict, Verdict::No);
        assert_eq!(r.checked_moment, 5);
        assert!(r.ray_count_at_moment.is_zero());
        assert!(!r.detectable);
    }

    #[test]
    fn coincident_rays_pool_power() {
        let p = PhysicalParams {
            detector_gain: BigRational::one(),
            source_power_w: BigRational::one(),
            ..PhysicalParams::default()
        };
        let r = run(vec![1, 1], 1, &p);
        assert_eq!(r.ray_count_at_moment, BigUint::from(2u8));
        assert_eq!(r.per_ray_power_w, BigRational::new(1.into(), 4.into()));
        assert_eq!(r.amplified_power_w, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn detectability_threshold() {
        let p = PhysicalParams {
            source_power_w: BigRational::one(),
            detector_gain: BigRational::one(),
            detection_threshold_w: BigRational::new(1.into(), 8.into()),
            ..PhysicalParams::default()
        };
        assert!(run(vec![1, 2, 4], 3, &p).detectable);
        assert!(!run(vec![1, 2, 4, 8], 3, &p).detectable);
    }

    #[test]
    fn stage_mismatch() {
        let inst = Instance::new(vec![1, 2], 1).unwrap();
        let short = Instance::new(vec![1], 1).unwrap();
        let p = PhysicalParams::default();
        let profile = propagate(&compile(&short, &p).unwrap());
        assert_eq!(
            detect(&profile, &inst, &p),
            Err(Error::StageMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn offset_mismatch_is_reported() {
        let inst = Instance::new(vec![1, 2], 1).unwrap();
        let profile = propagate(&compile(&inst, &PhysicalParams::default().with_offset_k(2)).unwrap());
        assert!(detect(&profile, &inst, &PhysicalParams::default()).is_err());
    }

    #[test]
    fn json_field_names() {
        let r = run(vec![1, 2, 3], 5, &PhysicalParams::default());
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(
            keys,
            [
                "amplified_power_w",
                "checked_moment",
                "detectable",
                "per_ray_power_w",
                "ray_count_at_moment",
                "verdict"
            ]
        );
        assert_eq!(v["verdict"], "YES");
        assert_eq!(v["checked_moment"].to_string(), "8");
        assert_eq!(v["per_ray_power_w"].to_string(), "0.000125");
    }
}
