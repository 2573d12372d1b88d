use alloc::vec;
use alloc::vec::Vec;

use super::{HplanError, ValueSolution};
use crate::envs::{StateId, TransitionGraph};
use crate::search::{astar, bfs, Algorithm, CostTables, SearchResult};

/// A subgoal sequence and the concatenated action-level path realising it.
#[derive(Debug, Clone, PartialEq)]
pub struct HierarchicalPlan {
    pub start: StateId,
    pub goal: StateId,
    /// Subgoals in visiting order, ending at the goal. Empty when
    /// `start == goal`.
    pub subgoal_sequence: Vec<StateId>,
    /// Action-level states from start to goal; segment joins appear once.
    pub full_path: Vec<StateId>,
    /// Per-segment action-level paths, each starting where the previous ended.
    pub segments: Vec<Vec<StateId>>,
    /// Expansions of the deterministic search run for each segment.
    pub segment_visits: Vec<usize>,
    /// `−Σ D` over segments.
    pub total_reward: f64,
    /// `Σ C` over segments, read from the cost tables.
    pub total_cost: f64,
}

impl HierarchicalPlan {
    pub fn value(&self) -> f64 {
        self.total_reward - self.total_cost
    }
}

/// Follows the subtask policy from `start`, running the configured
/// action-level planner for each segment.
pub fn extract_plan(
    solution: &ValueSolution,
    tables: &CostTables,
    graph: &TransitionGraph,
    start: StateId,
) -> Result<HierarchicalPlan, HplanError> {
    let goal = solution.goal;
    if start.index() >= graph.n_states() {
        return Err(HplanError::UnknownState(start));
    }
    if !solution.value(start).is_finite() {
        return Err(HplanError::Unreachable { start, goal });
    }
    let mut plan = HierarchicalPlan {
        start,
        goal,
        subgoal_sequence: Vec::new(),
        full_path: vec![start],
        segments: Vec::new(),
        segment_visits: Vec::new(),
        total_reward: 0.0,
        total_cost: 0.0,
    };
    let mut seen = vec![false; graph.n_states()];
    seen[start.index()] = true;
    let mut cur = start;
    while cur != goal {
        let next = solution.policy[cur.index()].ok_or(HplanError::Unreachable { start, goal })?;
        if seen[next.index()] {
            return Err(HplanError::PolicyCycle(next));
        }
        seen[next.index()] = true;
        let r = segment(tables, graph, cur, next)?;
        let path = r.path.ok_or(HplanError::Unreachable {
            start: cur,
            goal: next,
        })?;
        plan.full_path.extend_from_slice(&path[1..]);
        plan.total_reward -= f64::from(r.path_len.unwrap_or(0));
        plan.total_cost += tables.cost(cur, next);
        plan.segment_visits.push(r.visited);
        plan.segments.push(path);
        plan.subgoal_sequence.push(next);
        cur = next;
    }
    Ok(plan)
}

fn segment(
    tables: &CostTables,
    graph: &TransitionGraph,
    from: StateId,
    to: StateId,
) -> Result<SearchResult, HplanError> {
    let cfg = tables.config();
    Ok(match cfg.algorithm {
        Algorithm::Bfs => bfs(graph, from, to)?,
        Algorithm::AStar => astar(graph, from, to, cfg.heuristic)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envs::build_grid;
    use crate::hplan::{value_iteration, SubgoalSet};
    use crate::search::{all_pairs_tables, CostConfig};

    #[test]
    fn start_equals_goal() {
        let g = build_grid("...").unwrap();
        let t = all_pairs_tables(&g, &CostConfig::bfs()).unwrap();
        let sol = value_iteration(&t, &SubgoalSet::empty(), StateId(2), 1e-5).unwrap();
        let p = extract_plan(&sol, &t, &g, StateId(2)).unwrap();
        assert!(p.subgoal_sequence.is_empty());
        assert_eq!(p.full_path, vec![StateId(2)]);
        assert_eq!(p.total_cost, 0.0);
    }

    #[test]
    fn plan_value_matches_solution() {
        let g = build_grid("....\n.#..\n....").unwrap();
        let t = all_pairs_tables(&g, &CostConfig::bfs()).unwrap();
        let z = SubgoalSet::new([StateId(4), StateId(6)]);
        for goal in g.states() {
            let sol = value_iteration(&t, &z, goal, 1e-5).unwrap();
            for s in g.states() {
                let p = extract_plan(&sol, &t, &g, s).unwrap();
                assert!((p.value() - sol.value(s)).abs() < 1e-9);
                assert_eq!(p.total_reward, -((p.full_path.len() - 1) as f64));
                assert_eq!(p.subgoal_sequence.last().copied().unwrap_or(goal), goal);
                for w in p.segments.windows(2) {
                    assert_eq!(w[0].last(), w[1].first());
                }
            }
        }
    }
}
