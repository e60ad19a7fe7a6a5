use num_rational::BigRational;
use serde::Serialize;

use super::{Instance, PhysicalParams, Quanta};
use crate::error::{Error, Result};

/// One split-and-rejoin stage between consecutive nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Stage {
    /// Arc that leaves the value out.
    pub skip_delay: Quanta,
    /// Arc that adds the value.
    pub take_delay: Quanta,
    pub value: u64,
}

/// The offset device: every skip arc has length `k`, every take arc `a_i + k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DeviceLayout {
    stages: Vec<Stage>,
    offset_k: u64,
}

impl DeviceLayout {
    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn offset_k(&self) -> u64 {
        self.offset_k
    }

    pub fn node_count(&self) -> usize {
        self.stages.len() + 1
    }

    pub fn arc_count(&self) -> usize {
        2 * self.stages.len()
    }
}

/// The flawed device with tiny skip arcs of length `ε` and un-offset take
/// arcs. Kept only to exhibit its spurious detections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EpsilonLayout {
    stages: Vec<Stage>,
    epsilon: u64,
}

impl EpsilonLayout {
    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn epsilon(&self) -> u64 {
        self.epsilon
    }

    pub fn node_count(&self) -> usize {
        self.stages.len() + 1
    }
}

pub fn compile(instance: &Instance, params: &PhysicalParams) -> Result<DeviceLayout> {
    let k = params.offset_k_quanta;
    if k == 0 {
        return Err(Error::InvalidValue(
            "offset k must be at least one quantum".into(),
        ));
    }
    let stages = instance
        .values()
        .iter()
        .map(|&a| Stage {
            skip_delay: Quanta::from(k),
            take_delay: Quanta::from(a) + Quanta::from(k),
            value: a,
        })
        .collect();
    Ok(DeviceLayout { stages, offset_k: k })
}

pub fn compile_epsilon(instance: &Instance, epsilon: u64) -> Result<EpsilonLayout> {
    if epsilon == 0 {
        return Err(Error::InvalidValue("epsilon must be at least one quantum".into()));
    }
    let stages = instance
        .values()
        .iter()
        .map(|&a| Stage {
            skip_delay: Quanta::from(epsilon),
            take_delay: Quanta::from(a),
            value: a,
        })
        .collect();
    Ok(EpsilonLayout { stages, epsilon })
}

/// Physical cable lengths in metres, skip then take for each stage.
pub fn cable_lengths(layout: &DeviceLayout, params: &PhysicalParams) -> Vec<BigRational> {
    let quantum = params.quantum_length_m();
    layout
        .stages()
        .iter()
        .flat_map(|s| [s.skip_delay, s.take_delay])
        .map(|d| BigRational::from_integer(d.into()) * &quantum)
        .collect()
}
