use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::decimal::pow10;
use crate::error::{Error, Result};

/// Physical constants of the device and its detector chain.
///
/// All quantities are exact rationals so that bounds such as
/// `3000 m / 0.0003 m` come out as exact integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhysicalParams {
    /// Smallest resolvable time step (oscilloscope rise time), seconds.
    pub delay_quantum_s: BigRational,
    /// Vacuum light speed, m/s.
    pub light_speed_m_s: BigRational,
    /// Fraction of the vacuum speed at which light travels in the fiber.
    pub velocity_factor: BigRational,
    /// Uniform extra delay `k` added to every arc, in quanta.
    pub offset_k_quanta: u64,
    pub source_power_w: BigRational,
    /// Fraction of the incoming power a splitter passes on (split evenly).
    pub splitter_transmission: BigRational,
    pub detector_gain: BigRational,
    pub detection_threshold_w: BigRational,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        PhysicalParams {
            delay_quantum_s: pow10(-12),
            light_speed_m_s: BigRational::from_integer(BigInt::from(3)) * pow10(8),
            velocity_factor: BigRational::one(),
            offset_k_quanta: 1,
            // 1 mW laser, lossless splitters, photomultiplier gain 10^8, 1 nW trigger level.
            source_power_w: pow10(-3),
            splitter_transmission: BigRational::one(),
            detector_gain: pow10(8),
            detection_threshold_w: pow10(-9),
        }
    }
}

impl PhysicalParams {
    pub fn validate(&self) -> Result<()> {
        fn positive(name: &str, v: &BigRational) -> Result<()> {
            if v.is_positive() {
                Ok(())
            } else {
                Err(Error::InvalidValue(format!("{name} must be positive, got {v}")))
            }
        }
        fn fraction(name: &str, v: &BigRational) -> Result<()> {
            if v.is_positive() && *v <= BigRational::one() {
                Ok(())
            } else {
                Err(Error::InvalidValue(format!("{name} must lie in (0, 1], got {v}")))
            }
        }
        positive("delay_quantum_s", &self.delay_quantum_s)?;
        positive("light_speed_m_s", &self.light_speed_m_s)?;
        fraction("velocity_factor", &self.velocity_factor)?;
        if self.offset_k_quanta == 0 {
            return Err(Error::InvalidValue("offset_k_quanta must be at least 1".into()));
        }
        positive("source_power_w", &self.source_power_w)?;
        fraction("splitter_transmission", &self.splitter_transmission)?;
        positive("detector_gain", &self.detector_gain)?;
        if self.detection_threshold_w.is_negative() || self.detection_threshold_w.is_zero() {
            return Err(Error::InvalidValue(
                "detection_threshold_w must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Fiber length that delays light by one quantum: speed × factor × quantum.
    pub fn quantum_length_m(&self) -> BigRational {
        &self.light_speed_m_s * &self.velocity_factor * &self.delay_quantum_s
    }

    pub fn with_offset_k(mut self, k: u64) -> Self {
        self.offset_k_quanta = k;
        self
    }
}
