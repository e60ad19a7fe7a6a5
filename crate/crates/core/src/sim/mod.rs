//! Exact ray propagation, detection at `B + n·k`, the epsilon-device
//! counterexample and cable-cut perturbation experiments.

mod detect;
mod epsilon;
mod perturb;
mod profile;

pub use detect::{detect, DetectionReport};
pub use epsilon::{epsilon_false_positive_demo, EpsilonDemo};
pub use perturb::{
    detect_perturbed, perturb_and_classify, perturb_and_classify_with_offset, PerturbationReport,
    MICRO_UNITS_PER_QUANTUM, PERTURB_MAX_STAGES,
};
pub use profile::{propagate, propagate_epsilon, propagate_stages, ArrivalProfile};
