//! Orbits, fate classification, rotation numbers and parameter search.

mod classify;
mod orbit;
mod rotation;
mod tongues;

pub use classify::{classify_point, find_ring_seed, Budget, Fate, RayScan};
pub use orbit::{escaped, find_cycle, iterate, verify_cycle, CycleReport, Orbit, StopRules, Termination};
pub use rotation::{
    circle_rotation_number, circular_distance, find_t_circle, rotation_number, with_t, CircleLift,
    RotationEstimate, RotationMethod, RotationReport, AGREEMENT_TOL,
};
pub use tongues::{find_param_by_tongues, tracked_cycle, ParamSlice, TongueConfig, TongueLevel, TongueReport};
