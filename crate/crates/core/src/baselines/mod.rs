//! Two earlier approaches to locating the geometry behind a pair: point
//! frequencies under resampled noise, and reconstructed shortest cycles
//! from a representative cocycle.

mod rsc;
mod stat;

pub use rsc::{
    bandwidth_k_index, default_k_index, is_nontrivial_in_prefix, reconstructed_shortest_cycle,
    CycleLoop, EdgeWeight, RscError,
};
pub use stat::{
    statistical_frequencies, FrequencyMap, FrequencyStatus, NoiseModel, StatError, TargetPair,
};
