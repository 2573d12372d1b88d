//! Choosing the subgoal set that maximises expected subtask-level value:
//! exhaustive enumeration, gradient ascent on the soft relaxation, and the
//! softmax readout over single-subgoal values.

mod enumerate;
mod gradient;
mod profile;

use alloc::vec::Vec;

use crate::envs::{StateId, TaskDistribution};
use crate::hplan::{HplanError, SubgoalSet};
use crate::search::CostTables;

pub use enumerate::{enumerate_decompositions, ENUMERATION_LIMIT};
pub use gradient::{gradient_decomposition, GradientParams, InclusionProfile};
pub use profile::{subgoal_value_profile, used_subgoals, ValueProfile};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Plan(#[from] HplanError),
    #[error(
        "{sets} subgoal sets exceed the enumeration limit of {limit}; use the gradient method"
    )]
    Intractable { sets: u128, limit: u128 },
    #[error("invalid hyperparameter: {0}")]
    Hyperparameter(&'static str),
    #[error("objective became non-finite at step {0}")]
    Instability(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Enumeration,
    Gradient,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Enumeration => "enumerate",
            Method::Gradient => "gradient",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedSet {
    pub set: SubgoalSet,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionResult {
    pub method: Method,
    pub k: usize,
    /// Best first: value descending, then smaller sets, then lexicographic ids.
    pub ranked: Vec<RankedSet>,
    /// Expected value with no subgoals.
    pub baseline: f64,
}

impl DecompositionResult {
    pub fn optimum(&self) -> &RankedSet {
        &self.ranked[0]
    }
}

/// Sort key for rankings. Values are compared after rounding to 1e-9 so that
/// floating-point noise cannot override the parsimony tie-break.
pub(crate) fn rank_sets(sets: &mut [RankedSet]) {
    sets.sort_by(|a, b| {
        quantize(b.value)
            .cmp(&quantize(a.value))
            .then(a.set.len().cmp(&b.set.len()))
            .then_with(|| a.set.members().cmp(b.set.members()))
    });
}

fn quantize(v: f64) -> i64 {
    if v == f64::NEG_INFINITY {
        i64::MIN
    } else {
        libm::round(v * 1e9) as i64
    }
}

/// States that can lie on the way from some task's start to its goal.
pub fn candidate_pool(tables: &CostTables, tasks: &TaskDistribution) -> Vec<StateId> {
    (0..tables.n_states())
        .map(StateId::new)
        .filter(|&z| {
            tasks
                .tasks()
                .iter()
                .any(|t| tables.reachable(t.start, z) && tables.reachable(z, t.goal))
        })
        .collect()
}
