use alloc::vec;
use alloc::vec::Vec;

use super::ExperimentError;
use crate::envs::{StateId, TransitionGraph};
use crate::hplan::SubgoalSet;
use crate::search::CostTables;

/// Cap on enumerated shortest paths per pair.
pub const MAX_PATHS: usize = 4096;

/// All shortest paths from `start` to `goal`, neighbours in ascending id.
pub fn shortest_paths(
    graph: &TransitionGraph,
    tables: &CostTables,
    start: StateId,
    goal: StateId,
) -> Vec<Vec<StateId>> {
    let mut out = Vec::new();
    if tables.distance(start, goal).is_none() {
        return out;
    }
    let mut stack = vec![start];
    walk(graph, tables, goal, &mut stack, &mut out);
    out
}

fn walk(
    graph: &TransitionGraph,
    tables: &CostTables,
    goal: StateId,
    stack: &mut Vec<StateId>,
    out: &mut Vec<Vec<StateId>>,
) {
    if out.len() >= MAX_PATHS {
        return;
    }
    let u = *stack.last().expect("stack starts non-empty");
    if u == goal {
        out.push(stack.clone());
        return;
    }
    let du = tables.distance(u, goal).unwrap_or(u32::MAX);
    for &v in graph.neighbors(u) {
        if tables.distance(v, goal).is_some_and(|dv| dv + 1 == du) {
            stack.push(v);
            walk(graph, tables, goal, stack, out);
            stack.pop();
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSummary {
    pub path: Vec<StateId>,
    /// Subgoals traversed after the start, the goal included.
    pub hierarchical_length: usize,
    pub bottleneck_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPreference {
    pub start: StateId,
    pub goal: StateId,
    pub paths: Vec<PathSummary>,
    /// Index of the first path with the shortest hierarchical plan, or
    /// `None` when every path ties.
    pub preferred: Option<usize>,
}

impl PathPreference {
    pub fn is_indifferent(&self) -> bool {
        self.preferred.is_none()
    }
}

/// Scores each equal-length optimal path by the length of its subtask-level
/// plan under `Z`.
pub fn hanoi_path_preference(
    graph: &TransitionGraph,
    tables: &CostTables,
    z: &SubgoalSet,
    start: StateId,
    goal: StateId,
) -> Result<PathPreference, ExperimentError> {
    let paths = shortest_paths(graph, tables, start, goal);
    if paths.len() < 2 {
        return Err(ExperimentError::NotProblemOfInterest { start, goal });
    }
    let paths: Vec<PathSummary> = paths
        .into_iter()
        .map(|path| {
            let crossed = path[1..]
                .iter()
                .filter(|&&s| s != goal && z.contains(s))
                .count();
            let bottleneck_count = path.iter().filter(|&&s| graph.is_bottleneck(s)).count();
            PathSummary {
                path,
                hierarchical_length: crossed + 1,
                bottleneck_count,
            }
        })
        .collect();
    let best = paths
        .iter()
        .map(|p| p.hierarchical_length)
        .min()
        .unwrap_or(0);
    let preferred = if paths.iter().all(|p| p.hierarchical_length == best) {
        None
    } else {
        paths.iter().position(|p| p.hierarchical_length == best)
    };
    Ok(PathPreference {
        start,
        goal,
        paths,
        preferred,
    })
}

/// Ordered pairs with at least two shortest paths that differ in how many
/// bottleneck states they cross.
pub fn problems_of_interest(
    graph: &TransitionGraph,
    tables: &CostTables,
) -> Vec<(StateId, StateId)> {
    let mut out = Vec::new();
    for s in graph.states() {
        for g in graph.states() {
            if s == g {
                continue;
            }
            let paths = shortest_paths(graph, tables, s, g);
            if paths.len() < 2 {
                continue;
            }
            let counts: Vec<usize> = paths
                .iter()
                .map(|p| p.iter().filter(|&&x| graph.is_bottleneck(x)).count())
                .collect();
            if counts.iter().any(|&c| c != counts[0]) {
                out.push((s, g));
            }
        }
    }
    out
}
