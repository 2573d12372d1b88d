use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::bfs::check;
use super::{rebuild_path, Heuristic, SearchError, SearchResult};
use crate::envs::{StateId, TransitionGraph};

/// A* with unit step costs. Frontier ties break on lower `f`, then lower `h`,
/// then lower state id, then insertion order.
pub fn astar(
    graph: &TransitionGraph,
    start: StateId,
    goal: StateId,
    h: Heuristic,
) -> Result<SearchResult, SearchError> {
    h.check(graph)?;
    astar_ranked(graph, start, goal, h, None)
}

/// A* where the third tie-break key is `rank[state]` instead of the id.
/// `None` means rank by id.
pub fn astar_ranked(
    graph: &TransitionGraph,
    start: StateId,
    goal: StateId,
    h: Heuristic,
    rank: Option<&[u32]>,
) -> Result<SearchResult, SearchError> {
    check(graph, start)?;
    check(graph, goal)?;
    let n = graph.n_states();
    let rank_of = |s: StateId| rank.map_or(s.0, |r| r[s.index()]);
    let mut best_g = vec![u32::MAX; n];
    let mut closed = vec![false; n];
    let mut parent: Vec<Option<StateId>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    let mut seq: u64 = 0;

    let h0 = h.eval(graph, start, goal);
    best_g[start.index()] = 0;
    heap.push(Reverse((h0, h0, rank_of(start), seq, start)));
    let mut visited = 0;
    while let Some(Reverse((_, _, _, _, u))) = heap.pop() {
        if closed[u.index()] {
            continue;
        }
        closed[u.index()] = true;
        visited += 1;
        if u == goal {
            return Ok(SearchResult {
                path: Some(rebuild_path(&parent, goal)),
                path_len: Some(best_g[u.index()]),
                visited,
            });
        }
        let gu = best_g[u.index()];
        for &v in graph.neighbors(u) {
            let ng = gu + 1;
            if closed[v.index()] || ng >= best_g[v.index()] {
                continue;
            }
            best_g[v.index()] = ng;
            parent[v.index()] = Some(u);
            let hv = h.eval(graph, v, goal);
            seq += 1;
            heap.push(Reverse((ng + hv, hv, rank_of(v), seq, v)));
        }
    }
    Ok(SearchResult {
        path: None,
        path_len: None,
        visited,
    })
}
