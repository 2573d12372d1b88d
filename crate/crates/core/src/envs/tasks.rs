use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{EnvError, StateId, TransitionGraph};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Task {
    pub start: StateId,
    pub goal: StateId,
    pub mass: f64,
}

/// Probability mass over ordered `(start, goal)` pairs, kept sorted by pair.
#[derive(Debug, Clone, PartialEq)]
pub struct TaskDistribution {
    tasks: Vec<Task>,
}

impl TaskDistribution {
    /// Validates and normalises nothing: masses must already sum to one.
    /// Zero-mass entries are dropped; repeated pairs are merged.
    pub fn new(graph: &TransitionGraph, entries: &[Task]) -> Result<Self, EnvError> {
        let mut merged: BTreeMap<(StateId, StateId), f64> = BTreeMap::new();
        for t in entries {
            for s in [t.start, t.goal] {
                if s.index() >= graph.n_states() {
                    return Err(EnvError::UnknownState(s.index()));
                }
            }
            if !(t.mass.is_finite() && t.mass >= 0.0) {
                return Err(EnvError::InvalidDistribution(format!(
                    "mass {} for ({}, {})",
                    t.mass, t.start, t.goal
                )));
            }
            if t.start == t.goal {
                return Err(EnvError::InvalidDistribution(format!(
                    "start equals goal ({})",
                    t.start
                )));
            }
            *merged.entry((t.start, t.goal)).or_insert(0.0) += t.mass;
        }
        let tasks: Vec<Task> = merged
            .into_iter()
            .filter(|&(_, m)| m > 0.0)
            .map(|((start, goal), mass)| Task { start, goal, mass })
            .collect();
        if tasks.is_empty() {
            return Err(EnvError::EmptyDistribution);
        }
        let total: f64 = tasks.iter().map(|t| t.mass).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(EnvError::InvalidDistribution(format!(
                "masses sum to {total}"
            )));
        }
        let mut reach_cache: BTreeMap<StateId, Vec<bool>> = BTreeMap::new();
        for t in &tasks {
            let reach = reach_cache
                .entry(t.start)
                .or_insert_with(|| graph.reachable_from(t.start));
            if !reach[t.goal.index()] {
                return Err(EnvError::InvalidDistribution(format!(
                    "goal {} unreachable from {}",
                    t.goal, t.start
                )));
            }
        }
        Ok(TaskDistribution { tasks })
    }

    pub fn tasks(&self) -> &[Task] {
        &self.tasks
    }

    pub fn len(&self) -> usize {
        self.tasks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tasks.is_empty()
    }

    /// Distinct goals in ascending order.
    pub fn goals(&self) -> Vec<StateId> {
        let mut g: Vec<StateId> = self.tasks.iter().map(|t| t.goal).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// `(start, mass)` lists grouped by goal.
    pub fn by_goal(&self) -> BTreeMap<StateId, Vec<(StateId, f64)>> {
        let mut out: BTreeMap<StateId, Vec<(StateId, f64)>> = BTreeMap::new();
        for t in &self.tasks {
            out.entry(t.goal).or_default().push((t.start, t.mass));
        }
        out
    }

    /// Every state appearing as a start or goal, ascending.
    pub fn support(&self) -> Vec<StateId> {
        let mut s: Vec<StateId> = self.tasks.iter().flat_map(|t| [t.start, t.goal]).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// Uniform mass over ordered reachable pairs `s ≠ g` within `support`
/// (all states when `None`).
pub fn uniform_tasks(
    graph: &TransitionGraph,
    support: Option<&[StateId]>,
) -> Result<TaskDistribution, EnvError> {
    let states: Vec<StateId> = match support {
        Some(s) => {
            let mut v = s.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        }
        None => graph.states().collect(),
    };
    for s in &states {
        if s.index() >= graph.n_states() {
            return Err(EnvError::UnknownState(s.index()));
        }
    }
    let mut pairs = Vec::new();
    for &s in &states {
        let reach = graph.reachable_from(s);
        for &g in &states {
            if s != g && reach[g.index()] {
                pairs.push((s, g));
            }
        }
    }
    if pairs.is_empty() {
        return Err(EnvError::EmptyDistribution);
    }
    let mass = 1.0 / pairs.len() as f64;
    let tasks = pairs
        .into_iter()
        .map(|(start, goal)| Task { start, goal, mass })
        .collect();
    Ok(TaskDistribution { tasks })
}
