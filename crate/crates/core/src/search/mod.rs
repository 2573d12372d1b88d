//! Action-level planners instrumented with expansion counts, heuristics, and
//! all-pairs distance / search-cost tables.

mod astar;
mod bfs;
mod heuristic;
mod oracle;
mod tables;

use alloc::vec::Vec;

use crate::envs::StateId;

pub use astar::{astar, astar_ranked};
pub use bfs::{bfs, bfs_order};
pub use heuristic::{hanoi_edit_distance, manhattan, Heuristic};
pub use oracle::oracle_all_pairs;
pub use tables::{all_pairs_tables, Algorithm, CostConfig, CostTables, TieBreak};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SearchError {
    #[error("manhattan heuristic needs grid coordinates")]
    MissingCoordinates,
    #[error("hanoi_edit heuristic needs a Tower of Hanoi environment")]
    NotHanoi,
    #[error("heuristic is inadmissible at ({from}, {to}): h = {h} > D = {distance}")]
    Inadmissible {
        from: StateId,
        to: StateId,
        h: u32,
        distance: u32,
    },
    #[error("state {0} is out of range")]
    UnknownState(StateId),
    #[error("cost weight must be positive and finite, got {0}")]
    CostWeight(f64),
    #[error("averaged tie-breaking needs at least one sample")]
    NoSamples,
}

/// Outcome of a single action-level search.
///
/// `path` and `path_len` are `None` when the goal is unreachable; then
/// `visited` is the size of the start's reachable component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub path: Option<Vec<StateId>>,
    pub path_len: Option<u32>,
    pub visited: usize,
}

impl SearchResult {
    pub fn is_reachable(&self) -> bool {
        self.path_len.is_some()
    }
}

pub(crate) fn rebuild_path(parent: &[Option<StateId>], goal: StateId) -> Vec<StateId> {
    let mut path = alloc::vec![goal];
    let mut cur = goal;
    while let Some(p) = parent[cur.index()] {
        path.push(p);
        cur = p;
    }
    path.reverse();
    path
}
