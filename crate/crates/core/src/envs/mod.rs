//! Environments: transition graphs for gridworlds, abstract graphs and the
//! Tower of Hanoi, plus task distributions over them.

mod edgelist;
mod graph;
mod grid;
mod hanoi;
mod tasks;

use alloc::string::String;

pub use edgelist::{build_graph, parse_edge_list, EdgeListAsset};
pub use graph::{Coord, StateId, TransitionGraph};
pub use grid::{build_grid, render_grid};
pub use hanoi::{build_hanoi, HanoiState, MAX_HANOI_DISKS};
pub use tasks::{uniform_tasks, Task, TaskDistribution};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EnvError {
    #[error("format error on line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("environment has no floor tiles")]
    EmptyEnvironment,
    #[error("edge list is empty")]
    EmptyEdgeList,
    #[error("Tower of Hanoi supports 1..={max} disks, got {requested}")]
    Capacity { requested: usize, max: usize },
    #[error("state {0} is out of range")]
    UnknownState(usize),
    #[error("no label named `{0}`")]
    UnknownLabel(String),
    #[error("task distribution has no valid (start, goal) pair")]
    EmptyDistribution,
    #[error("invalid task distribution: {0}")]
    InvalidDistribution(String),
    #[error("disk count mismatch: {0} vs {1}")]
    DiskMismatch(usize, usize),
}

impl EnvError {
    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        EnvError::Format {
            line,
            message: message.into(),
        }
    }
}
