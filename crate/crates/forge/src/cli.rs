//! Argument parsing and exit codes.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{cmd_decompose, cmd_export, cmd_plan, ExportFormat};
use crate::config::RunConfig;
use crate::experiments::{cmd_experiment, preset};
use crate::UsageError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "subgoal-forge",
    version,
    about = "Resource-rational task decomposition"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank subgoal sets for an environment.
    Decompose {
        #[command(flatten)]
        knobs: Knobs,
    },
    /// Plan one task through the best decomposition or given subgoals.
    Plan {
        #[arg(long)]
        start: String,
        #[arg(long)]
        goal: String,
        #[command(flatten)]
        knobs: Knobs,
    },
    /// Run a replication: schapiro, solway1, solway23, hanoi-bfs,
    /// hanoi-astar or gridworlds.
    Experiment {
        name: String,
        #[command(flatten)]
        knobs: Knobs,
    },
    /// Write an environment as an edge list, cost table or grid map.
    Export {
        /// edgelist, costs or grid
        #[arg(long)]
        format: String,
        #[command(flatten)]
        knobs: Knobs,
    },
}

/// Flags mirroring the config file keys. Each one overrides the file.
#[derive(Debug, Default, Args)]
pub struct Knobs {
    /// Config file of `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Builtin name or path to a .grid / .edges file.
    #[arg(long)]
    pub env: Option<String>,
    #[arg(long, visible_alias = "alg")]
    pub algorithm: Option<String>,
    #[arg(long)]
    pub heuristic: Option<String>,
    /// averaged or by_id
    #[arg(long)]
    pub tie_break: Option<String>,
    #[arg(long)]
    pub samples: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub k: Option<String>,
    /// enumerate or gradient
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub epsilon: Option<String>,
    #[arg(long)]
    pub cost_weight: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub steps: Option<String>,
    #[arg(long)]
    pub step_size: Option<String>,
    #[arg(long)]
    pub initial_temperature: Option<String>,
    #[arg(long)]
    pub final_temperature: Option<String>,
    #[arg(long)]
    pub jitter: Option<String>,
    /// Comma-separated task support states.
    #[arg(long)]
    pub support: Option<String>,
    /// Comma-separated subgoals (plan only).
    #[arg(long)]
    pub subgoals: Option<String>,
    /// Output directory.
    #[arg(long, visible_alias = "out")]
    pub output: Option<String>,
}

impl Knobs {
    /// Layers the config file, then flags, over `base`.
    pub fn resolve(&self, mut base: RunConfig) -> Result<RunConfig, UsageError> {
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| {
                UsageError::new(format!("config: cannot read {}: {e}", path.display()))
            })?;
            base.apply_text(&text)?;
        }
        let flags = [
            ("env", &self.env),
            ("algorithm", &self.algorithm),
            ("heuristic", &self.heuristic),
            ("tie_break", &self.tie_break),
            ("samples", &self.samples),
            ("seed", &self.seed),
            ("k", &self.k),
            ("method", &self.method),
            ("epsilon", &self.epsilon),
            ("cost_weight", &self.cost_weight),
            ("beta", &self.beta),
            ("steps", &self.steps),
            ("step_size", &self.step_size),
            ("initial_temperature", &self.initial_temperature),
            ("final_temperature", &self.final_temperature),
            ("jitter", &self.jitter),
            ("support", &self.support),
            ("subgoals", &self.subgoals),
            ("output", &self.output),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                base.apply(key, v)?;
            }
        }
        Ok(base)
    }
}

fn dispatch(cmd: Command) -> anyhow::Result<PathBuf> {
    match cmd {
        Command::Decompose { knobs } => cmd_decompose(knobs.resolve(RunConfig::default())?),
        Command::Plan { start, goal, knobs } => {
            cmd_plan(knobs.resolve(RunConfig::default())?, &start, &goal)
        }
        Command::Experiment { name, knobs } => {
            let base = preset(&name)?;
            cmd_experiment(&name, knobs.resolve(base)?)
        }
        Command::Export { format, knobs } => {
            let f = ExportFormat::parse(&format).ok_or_else(|| {
                UsageError::new(format!(
                    "format: expected edgelist, costs or grid, got `{format}`"
                ))
            })?;
            cmd_export(knobs.resolve(RunConfig::default())?, f)
        }
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(dir) => {
            println!("wrote {}", dir.display());
            EXIT_OK
        }
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_RUNTIME
        }
    }
}
