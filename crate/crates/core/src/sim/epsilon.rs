use serde::Serialize;

use super::{detect, propagate, propagate_epsilon};
use crate::error::Result;
use crate::model::{compile, compile_epsilon, Instance, PhysicalParams, Quanta};
use crate::oracles::OracleConfig;
use crate::verdict::Verdict;

/// Side-by-side answers of the epsilon device, the offset device and a
/// classical solver on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsilonDemo {
    pub epsilon: u64,
    /// Epsilon device read naively at the raw moment `B`.
    pub epsilon_verdict: Verdict,
    /// Offset device read at `B + n·k`.
    pub offset_verdict: Verdict,
    pub oracle_verdict: Verdict,
    pub oracle_solver: String,
    /// The epsilon device claimed YES on a NO instance.
    pub spurious_yes: bool,
    pub offset_agrees_with_oracle: bool,
}

pub fn epsilon_false_positive_demo(
    instance: &Instance,
    epsilon: u64,
    params: &PhysicalParams,
) -> Result<EpsilonDemo> {
    let eps_profile = propagate_epsilon(&compile_epsilon(instance, epsilon)?);
    let epsilon_verdict = Verdict::from(eps_profile.contains(Quanta::from(instance.target())));

    let profile = propagate(&compile(instance, params)?);
    let offset_verdict = detect(&profile, instance, params)?.verdict;

    let oracle = OracleConfig::default().solve_auto(instance)?;
    Ok(EpsilonDemo {
        epsilon,
        epsilon_verdict,
        offset_verdict,
        oracle_verdict: oracle.verdict,
        oracle_solver: oracle.solver_name,
        spurious_yes: epsilon_verdict.is_yes() && !oracle.verdict.is_yes(),
        offset_agrees_with_oracle: offset_verdict == oracle.verdict,
    })
}
