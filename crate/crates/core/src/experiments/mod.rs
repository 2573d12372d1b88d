//! Replication procedures that need no IO: the probe reaction-time
//! simulation, Tower of Hanoi path preference, and a betweenness helper for
//! sanity-checking bottleneck labels.

mod betweenness;
mod paths;
mod probe;

use crate::envs::StateId;
use crate::hplan::HplanError;

pub use betweenness::betweenness;
pub use paths::{
    hanoi_path_preference, problems_of_interest, shortest_paths, PathPreference, PathSummary,
    MAX_PATHS,
};
pub use probe::{
    probe_outcome, run_probe_battery, simulate_probe, Answer, ProbeBattery, ProbeCell,
    ProbeOutcome, ProbeTrial,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Plan(#[from] HplanError),
    #[error("({start}, {goal}) has a unique shortest path, so it is not a problem of interest")]
    NotProblemOfInterest { start: StateId, goal: StateId },
    #[error("trial is invalid: {0}")]
    InvalidTrial(&'static str),
}
