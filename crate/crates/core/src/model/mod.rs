//! Domain types, decimal normalization and compilation into the offset
//! delay-line layout.

mod document;
mod instance;
mod layout;
mod params;

pub use document::{parse_instance_document, InstanceDocument};
pub use instance::{normalize, normalize_with_ceiling, Instance, RawInstance, Scale, DEFAULT_VALUE_CEILING};
pub use layout::{cable_lengths, compile, compile_epsilon, DeviceLayout, EpsilonLayout, Stage};
pub use params::PhysicalParams;

/// Arrival times and arc delays, in delay quanta.
pub type Quanta = u128;
