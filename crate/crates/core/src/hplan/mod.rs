//! Subtask-level planning over a subgoal set: hard and soft value iteration,
//! expected value under a task distribution, and plan extraction.

mod plan;
mod soft;
mod value;

use alloc::vec::Vec;
use core::fmt;

use crate::envs::StateId;
use crate::search::SearchError;

pub use plan::{extract_plan, HierarchicalPlan};
pub use soft::{soft_expected_value, soft_value_iteration, SoftObjective, SoftSolution};
pub use value::{
    bellman_residual, expected_value, value_iteration, ValueSolution, DEFAULT_EPSILON, MAX_SWEEPS,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HplanError {
    #[error("state {0} is out of range")]
    UnknownState(StateId),
    #[error("epsilon must be positive, got {0}")]
    Epsilon(f64),
    #[error("temperature must be positive, got {0}")]
    Temperature(f64),
    #[error("inclusion weights must lie in [0, 1] and match the state count")]
    Weights,
    #[error("value iteration did not converge within {0} sweeps")]
    Diverged(usize),
    #[error("goal {goal} is unreachable from {start}")]
    Unreachable { start: StateId, goal: StateId },
    #[error("policy revisits subgoal {0}")]
    PolicyCycle(StateId),
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// Non-trivial subgoals `Z`. The per-task goal is added implicitly by the
/// planner. Members are kept sorted and unique.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubgoalSet {
    members: Vec<StateId>,
}

impl SubgoalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(members: impl IntoIterator<Item = StateId>) -> Self {
        let mut members: Vec<StateId> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        SubgoalSet { members }
    }

    pub fn members(&self) -> &[StateId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: StateId) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn with(&self, s: StateId) -> Self {
        Self::new(self.members.iter().copied().chain(core::iter::once(s)))
    }

    pub fn without(&self, s: StateId) -> Self {
        Self::new(self.members.iter().copied().filter(|&m| m != s))
    }

    /// Is every member of `self` in `other`?
    pub fn is_subset(&self, other: &SubgoalSet) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }
}

impl fmt::Display for SubgoalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn set_basics() {
        let z = SubgoalSet::new([StateId(3), StateId(1), StateId(3)]);
        assert_eq!(z.members(), &[StateId(1), StateId(3)]);
        assert!(z.contains(StateId(3)));
        assert_eq!(z.to_string(), "{1,3}");
        assert_eq!(z.without(StateId(1)).with(StateId(0)).to_string(), "{0,3}");
        assert!(SubgoalSet::empty().is_subset(&z));
        assert!(!z.is_subset(&SubgoalSet::new([StateId(1)])));
    }
}
