//! Files, assets and the command line around `subgoal-forge-core`.
//!
//! Builtin environments are embedded; set `SUBGOAL_FORGE_ASSETS` to a
//! directory to load edited copies instead.

pub mod assets;
pub mod cli;
pub mod commands;
pub mod config;
pub mod experiments;
pub mod output;

pub use subgoal_forge_core as core;

/// A bad flag, config value or environment name. Exits with status 1;
/// every other error exits with 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(String);

impl UsageError {
    pub fn new(msg: impl Into<String>) -> Self {
        UsageError(msg.into())
    }
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}
