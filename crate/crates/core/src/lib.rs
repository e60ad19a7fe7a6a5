//! Simulation of an optical delay-line device that decides subset-sum.
//!
//! An instance `A = {a_1..a_n}`, `B` is compiled into a chain of `n + 1`
//! nodes. Between consecutive nodes a beam splitter sends light down two
//! fibers: one of length `k` quanta and one of length `a_i + k`. Every path
//! through the chain picks a subset, so the destination sees a ray at time
//! `sum(subset) + n·k` for each subset. The instance is a YES exactly when a
//! ray arrives at `B + n·k`.
//!
//! The crate computes those arrival profiles exactly, checks them against
//! classical solvers, and evaluates the physical limits of the device
//! (cable lengths, power loss, detector sensitivity).

pub mod analysis;
pub mod decimal;
mod error;
pub mod model;
pub mod oracles;
pub mod serde_util;
pub mod sim;
mod verdict;

pub use analysis::{
    answer_time, feasibility, max_detectable_n, max_encodable, per_ray_power, required_source_power,
    slow_light_rescale, AnswerTime, FeasibilityReport,
};
pub use decimal::Decimal;
pub use error::{Error, Result};
pub use model::{
    cable_lengths, compile, compile_epsilon, normalize, normalize_with_ceiling, parse_instance_document,
    DeviceLayout, EpsilonLayout, Instance, InstanceDocument, PhysicalParams, Quanta, RawInstance, Scale,
    Stage,
};
pub use oracles::{solve_bruteforce, solve_dp, solve_mitm, OracleChoice, OracleConfig, OracleResult};
pub use sim::{
    detect, epsilon_false_positive_demo, perturb_and_classify, perturb_and_classify_with_offset, propagate,
    propagate_epsilon, ArrivalProfile, DetectionReport, EpsilonDemo, PerturbationReport,
};
pub use verdict::Verdict;
