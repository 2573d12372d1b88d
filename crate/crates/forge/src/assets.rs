//! Shipped environments and environment loading.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use sha2::{Digest, Sha256};
use subgoal_forge_core::envs::{build_grid, build_hanoi, parse_edge_list, uniform_tasks};
use subgoal_forge_core::{StateId, TaskDistribution, TransitionGraph};

use crate::UsageError;

/// Directory that overrides the embedded assets.
pub const ASSETS_ENV_VAR: &str = "SUBGOAL_FORGE_ASSETS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssetKind {
    Grid,
    EdgeList,
}

#[derive(Debug, Clone, Copy)]
pub struct Builtin {
    pub name: &'static str,
    pub file: &'static str,
    pub kind: AssetKind,
    text: &'static str,
    /// Tiles the default task distribution is spread over.
    pub support: &'static [&'static str],
    /// Grid tiles labelled as bottlenecks (edge lists carry their own).
    pub bottlenecks: &'static [&'static str],
}

pub const BUILTINS: &[Builtin] = &[
    Builtin {
        name: "schapiro",
        file: "schapiro.edges",
        kind: AssetKind::EdgeList,
        text: include_str!("../assets/schapiro.edges"),
        support: &[],
        bottlenecks: &[],
    },
    Builtin {
        name: "solway-exp1",
        file: "solway-exp1.edges",
        kind: AssetKind::EdgeList,
        text: include_str!("../assets/solway-exp1.edges"),
        support: &[],
        bottlenecks: &[],
    },
    Builtin {
        name: "solway-exp23",
        file: "solway-exp23.edges",
        kind: AssetKind::EdgeList,
        text: include_str!("../assets/solway-exp23.edges"),
        support: &[],
        bottlenecks: &[],
    },
    Builtin {
        name: "open-field",
        file: "open-field.grid",
        kind: AssetKind::Grid,
        text: include_str!("../assets/open-field.grid"),
        support: &["S", "G"],
        bottlenecks: &[],
    },
    Builtin {
        name: "two-room",
        file: "two-room.grid",
        kind: AssetKind::Grid,
        text: include_str!("../assets/two-room.grid"),
        support: &["S", "G"],
        bottlenecks: &["D"],
    },
    Builtin {
        name: "indoor-outdoor",
        file: "indoor-outdoor.grid",
        kind: AssetKind::Grid,
        text: include_str!("../assets/indoor-outdoor.grid"),
        support: &["1", "2", "3"],
        bottlenecks: &["X", "Y"],
    },
];

/// Every name `load_environment` accepts without a path.
pub fn builtin_names() -> Vec<String> {
    let mut names: Vec<String> = BUILTINS.iter().map(|b| b.name.to_string()).collect();
    names.push("hanoi1..hanoi8".into());
    names
}

/// A loaded environment plus what a run needs to reproduce it.
#[derive(Debug, Clone)]
pub struct Environment {
    pub name: String,
    pub graph: TransitionGraph,
    /// Default task support; `None` means every state.
    pub support: Option<Vec<StateId>>,
    /// SHA-256 of the asset text the graph was built from.
    pub digest: String,
    pub warnings: Vec<String>,
}

impl Environment {
    /// Uniform tasks over `support` names, or the environment's default.
    pub fn tasks(&self, support: Option<&[String]>) -> anyhow::Result<TaskDistribution> {
        let ids = match support {
            Some(names) => Some(
                names
                    .iter()
                    .map(|n| self.resolve(n))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => self.support.clone(),
        };
        uniform_tasks(&self.graph, ids.as_deref())
            .map_err(|e| UsageError::new(format!("support: {e}")).into())
    }

    pub fn resolve(&self, name: &str) -> Result<StateId, UsageError> {
        self.graph
            .resolve(name)
            .map_err(|e| UsageError::new(format!("{}: {e}", self.name)))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn builtin_text(b: &Builtin) -> anyhow::Result<String> {
    if let Some(dir) = std::env::var_os(ASSETS_ENV_VAR) {
        let path = PathBuf::from(dir).join(b.file);
        if path.is_file() {
            return std::fs::read_to_string(&path)
                .with_context(|| format!("reading {}", path.display()));
        }
    }
    Ok(b.text.to_string())
}

/// Loads a builtin by name (`schapiro`, `hanoi3`, ...) or a `.grid` /
/// `.edges` file by path.
pub fn load_environment(name: &str) -> anyhow::Result<Environment> {
    if let Some(b) = BUILTINS.iter().find(|b| b.name == name) {
        let text = builtin_text(b)?;
        return build(name, b.kind, &text, b.support, b.bottlenecks);
    }
    if let Some(n) = name
        .strip_prefix("hanoi")
        .and_then(|d| d.parse::<usize>().ok())
    {
        let graph = build_hanoi(n).map_err(|e| UsageError::new(format!("env: {e}")))?;
        let digest = sha256_hex(crate::output::edge_list_text(&graph, name).as_bytes());
        return Ok(Environment {
            name: name.to_string(),
            graph,
            support: None,
            digest,
            warnings: Vec::new(),
        });
    }
    let path = Path::new(name);
    let kind = match path.extension().and_then(|e| e.to_str()) {
        Some("grid") => AssetKind::Grid,
        Some("edges") | Some("txt") => AssetKind::EdgeList,
        _ => {
            return Err(UsageError::new(format!(
                "env: unknown environment `{name}`; expected one of {} or a .grid/.edges file",
                builtin_names().join(", ")
            ))
            .into())
        }
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError::new(format!("env: cannot read {name}: {e}")))?;
    build(name, kind, &text, &[], &[])
}

fn build(
    name: &str,
    kind: AssetKind,
    text: &str,
    support: &[&str],
    bottlenecks: &[&str],
) -> anyhow::Result<Environment> {
    let (mut graph, warnings) = match kind {
        AssetKind::Grid => (
            build_grid(text).map_err(|e| anyhow!("{name}: {e}"))?,
            Vec::new(),
        ),
        AssetKind::EdgeList => {
            let asset = parse_edge_list(text).map_err(|e| anyhow!("{name}: {e}"))?;
            (asset.graph, asset.warnings)
        }
    };
    let lookup = |g: &TransitionGraph, label: &str| {
        g.state_by_label(label)
            .ok_or_else(|| anyhow!("{name}: asset has no tile `{label}`"))
    };
    if !bottlenecks.is_empty() {
        let ids = bottlenecks
            .iter()
            .map(|l| lookup(&graph, l))
            .collect::<anyhow::Result<Vec<_>>>()?;
        graph = graph.with_bottlenecks(ids);
    }
    let support = if support.is_empty() {
        None
    } else {
        Some(
            support
                .iter()
                .map(|l| lookup(&graph, l))
                .collect::<anyhow::Result<Vec<_>>>()?,
        )
    };
    Ok(Environment {
        name: name.to_string(),
        graph,
        support,
        digest: sha256_hex(text.as_bytes()),
        warnings,
    })
}
