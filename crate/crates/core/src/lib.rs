//! Resource-rational task decomposition.
//!
//! Three nested optimisation levels:
//!
//! * action-level planning ([`search`]): BFS / A* from a state to a subgoal,
//!   instrumented to report how many states were expanded;
//! * subtask-level planning ([`hplan`]): a Bellman equation over a subgoal set
//!   trading path length against search cost;
//! * task decomposition ([`decompose`]): choosing the subgoal set that
//!   maximises expected subtask-level value under a task distribution.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, asset loading and
//! the command line live in the `subgoal-forge` companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod decompose;
pub mod envs;
pub mod experiments;
pub mod hplan;
pub mod search;

pub use envs::{StateId, TaskDistribution, TransitionGraph};
pub use hplan::SubgoalSet;
pub use search::{Algorithm, CostConfig, CostTables, Heuristic, TieBreak};
