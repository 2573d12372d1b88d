use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{rebuild_path, SearchError, SearchResult};
use crate::envs::{StateId, TransitionGraph};

/// Breadth-first search. The goal test happens at dequeue, so `visited`
/// counts every state expanded up to and including the goal.
pub fn bfs(
    graph: &TransitionGraph,
    start: StateId,
    goal: StateId,
) -> Result<SearchResult, SearchError> {
    check(graph, start)?;
    check(graph, goal)?;
    let n = graph.n_states();
    let mut parent: Vec<Option<StateId>> = vec![None; n];
    let mut depth = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    depth[start.index()] = 0;
    queue.push_back(start);
    let mut visited = 0;
    while let Some(u) = queue.pop_front() {
        visited += 1;
        if u == goal {
            return Ok(SearchResult {
                path: Some(rebuild_path(&parent, goal)),
                path_len: Some(depth[u.index()]),
                visited,
            });
        }
        for &v in graph.neighbors(u) {
            if depth[v.index()] == u32::MAX {
                depth[v.index()] = depth[u.index()] + 1;
                parent[v.index()] = Some(u);
                queue.push_back(v);
            }
        }
    }
    Ok(SearchResult {
        path: None,
        path_len: None,
        visited,
    })
}

/// Full expansion order and depth from `start`. BFS from `start` expands
/// states in this order regardless of the goal, so the expansion count for
/// goal `t` is `position(t) + 1`.
pub fn bfs_order(graph: &TransitionGraph, start: StateId) -> (Vec<StateId>, Vec<u32>) {
    let mut depth = vec![u32::MAX; graph.n_states()];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    depth[start.index()] = 0;
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &v in graph.neighbors(u) {
            if depth[v.index()] == u32::MAX {
                depth[v.index()] = depth[u.index()] + 1;
                queue.push_back(v);
            }
        }
    }
    (order, depth)
}

pub(super) fn check(graph: &TransitionGraph, s: StateId) -> Result<(), SearchError> {
    if s.index() < graph.n_states() {
        Ok(())
    } else {
        Err(SearchError::UnknownState(s))
    }
}
