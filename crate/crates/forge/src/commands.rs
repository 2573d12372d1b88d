//! `decompose`, `plan` and `export`.

use std::path::PathBuf;

use anyhow::anyhow;
use serde_json::{json, Value};
use subgoal_forge_core::decompose::{
    enumerate_decompositions, gradient_decomposition, subgoal_value_profile, used_subgoals,
    DecompositionResult, InclusionProfile, Method, ValueProfile,
};
use subgoal_forge_core::envs::render_grid;
use subgoal_forge_core::hplan::{extract_plan, value_iteration, HierarchicalPlan};
use subgoal_forge_core::search::all_pairs_tables;
use subgoal_forge_core::{Algorithm, CostTables, StateId, SubgoalSet, TaskDistribution};

use crate::assets::{load_environment, Environment};
use crate::config::RunConfig;
use crate::output::{
    costs_csv, decomposition_csv, edge_list_text, inclusion_csv, names, num, profile_csv,
    write_file, write_json,
};
use crate::UsageError;

/// An environment with its cost tables and task distribution.
pub struct Prepared {
    pub env: Environment,
    pub tables: CostTables,
    pub tasks: TaskDistribution,
}

pub fn prepare(cfg: &RunConfig) -> anyhow::Result<Prepared> {
    let name = cfg
        .env
        .as_deref()
        .ok_or_else(|| UsageError::new("env: no environment given"))?;
    let env = load_environment(name)?;
    prepare_env(env, cfg)
}

pub fn prepare_env(env: Environment, cfg: &RunConfig) -> anyhow::Result<Prepared> {
    if cfg.algorithm == Algorithm::AStar {
        cfg.heuristic.check(&env.graph).map_err(|e| {
            UsageError::new(format!(
                "heuristic: {} cannot be used on {}: {e}",
                cfg.heuristic.name(),
                env.name
            ))
        })?;
    }
    let tables = all_pairs_tables(&env.graph, &cfg.cost_config())?;
    let tasks = env.tasks(cfg.support.as_deref())?;
    Ok(Prepared { env, tables, tasks })
}

/// A ranking plus the per-state readout that goes with it: the softmax
/// profile for enumeration, the inclusion profile for the gradient method.
pub struct Decomposition {
    pub result: DecompositionResult,
    pub profile: Option<ValueProfile>,
    pub inclusion: Option<InclusionProfile>,
}

impl Decomposition {
    pub fn profile_csv(&self, p: &Prepared) -> anyhow::Result<String> {
        match (&self.profile, &self.inclusion) {
            (Some(profile), _) => profile_csv(&p.env.graph, profile),
            (None, Some(inc)) => inclusion_csv(&p.env.graph, &inc.probabilities),
            (None, None) => unreachable!("one readout is always present"),
        }
    }

    pub fn profile_mode(&self) -> Option<StateId> {
        match (&self.profile, &self.inclusion) {
            (Some(profile), _) => profile.mode(),
            (None, Some(inc)) => {
                let mut best: Option<(StateId, f64)> = None;
                for (i, &w) in inc.probabilities.iter().enumerate() {
                    if best.is_none_or(|(_, b)| w > b) {
                        best = Some((StateId::new(i), w));
                    }
                }
                best.map(|(s, _)| s)
            }
            (None, None) => None,
        }
    }
}

pub fn decompose(p: &Prepared, cfg: &RunConfig) -> anyhow::Result<Decomposition> {
    Ok(match cfg.method {
        Method::Enumeration => Decomposition {
            result: enumerate_decompositions(&p.tables, &p.tasks, cfg.k, cfg.epsilon)?,
            profile: Some(subgoal_value_profile(
                &p.tables,
                &p.tasks,
                cfg.beta,
                cfg.epsilon,
            )?),
            inclusion: None,
        },
        Method::Gradient => {
            let (result, inclusion) = gradient_decomposition(
                &p.tables,
                &p.tasks,
                cfg.k,
                &cfg.gradient_params(),
                cfg.epsilon,
            )?;
            Decomposition {
                result,
                profile: None,
                inclusion: Some(inclusion),
            }
        }
    })
}

pub fn environment_json(env: &Environment) -> Value {
    json!({
        "name": env.name,
        "sha256": env.digest,
        "states": env.graph.n_states(),
        "edges": env.graph.edge_count(),
        "directed": env.graph.is_directed(),
    })
}

pub fn set_json(p: &Prepared, set: &SubgoalSet, value: f64) -> Value {
    let g = &p.env.graph;
    json!({
        "members": names(g, set),
        "expected_value": value,
        "bottlenecks": set.members().iter().filter(|&&s| g.is_bottleneck(s)).map(|&s| g.display_name(s)).collect::<Vec<_>>(),
    })
}

pub fn decomposition_json(
    p: &Prepared,
    cfg: &RunConfig,
    d: &Decomposition,
) -> anyhow::Result<Value> {
    let r = &d.result;
    let best = r.optimum();
    let used = used_subgoals(&p.tables, &p.tasks, &best.set, cfg.epsilon)?;
    let mut optimum = set_json(p, &best.set, best.value);
    optimum["used"] = json!(names(&p.env.graph, &used));
    Ok(json!({
        "method": r.method.name(),
        "k": r.k,
        "baseline": r.baseline,
        "optimum": optimum,
        "sets_ranked": r.ranked.len(),
        "profile": {
            "kind": if d.profile.is_some() { "softmax" } else { "inclusion" },
            "mode": d.profile_mode().map(|s| p.env.graph.display_name(s)),
        },
    }))
}

fn default_output(cfg: &mut RunConfig, dir: String) {
    if !cfg.is_set("output") {
        cfg.output = PathBuf::from("runs").join(dir);
    }
}

pub fn cmd_decompose(mut cfg: RunConfig) -> anyhow::Result<PathBuf> {
    let p = prepare(&cfg)?;
    default_output(&mut cfg, format!("decompose-{}", file_stem(&p.env.name)));
    let d = decompose(&p, &cfg)?;
    let dir = &cfg.output;
    write_file(
        dir,
        "decomposition.csv",
        decomposition_csv(&p.env.graph, &d.result)?.as_bytes(),
    )?;
    write_file(dir, "profile.csv", d.profile_csv(&p)?.as_bytes())?;
    let report = json!({
        "command": "decompose",
        "environment": environment_json(&p.env),
        "tasks": p.tasks.len(),
        "decomposition": decomposition_json(&p, &cfg, &d)?,
    });
    write_json(dir, "report.json", &report)?;
    write_file(
        dir,
        "config.echo",
        cfg.echo(&[(p.env.name.clone(), p.env.digest.clone())], &[])
            .as_bytes(),
    )?;
    Ok(cfg.output)
}

/// Subgoal override names resolved and checked against the task.
fn resolve_subgoals(
    p: &Prepared,
    names: &[String],
    start: StateId,
    goal: StateId,
) -> Result<SubgoalSet, UsageError> {
    let mut ids = Vec::new();
    for n in names {
        let z = p.env.resolve(n)?;
        if !p.tables.reachable(start, z) || !p.tables.reachable(z, goal) {
            return Err(UsageError::new(format!(
                "subgoals: `{n}` is not on any route from {} to {}",
                p.env.graph.display_name(start),
                p.env.graph.display_name(goal)
            )));
        }
        ids.push(z);
    }
    Ok(SubgoalSet::new(ids))
}

pub fn plan_json(p: &Prepared, z: &SubgoalSet, plan: &HierarchicalPlan) -> Value {
    let g = &p.env.graph;
    let seq = |v: &[StateId]| v.iter().map(|&s| g.display_name(s)).collect::<Vec<_>>();
    json!({
        "start": g.display_name(plan.start),
        "goal": g.display_name(plan.goal),
        "subgoals": names(g, z),
        "subgoal_sequence": seq(&plan.subgoal_sequence),
        "segments": plan.segments.iter().map(|s| seq(s)).collect::<Vec<_>>(),
        "segment_visits": plan.segment_visits,
        "full_path": seq(&plan.full_path),
        "total_reward": plan.total_reward,
        "total_cost": plan.total_cost,
        "value": plan.value(),
    })
}

pub fn cmd_plan(mut cfg: RunConfig, start: &str, goal: &str) -> anyhow::Result<PathBuf> {
    let p = prepare(&cfg)?;
    default_output(&mut cfg, format!("plan-{}", file_stem(&p.env.name)));
    let s = p.env.resolve(start)?;
    let g = p.env.resolve(goal)?;
    if !p.tables.reachable(s, g) {
        return Err(anyhow!(
            "{} cannot reach {} in {}",
            p.env.graph.display_name(s),
            p.env.graph.display_name(g),
            p.env.name
        ));
    }
    let z = match &cfg.subgoals {
        Some(names) => resolve_subgoals(&p, names, s, g)?,
        None => decompose(&p, &cfg)?.result.optimum().set.clone(),
    };
    let sol = value_iteration(&p.tables, &z, g, cfg.epsilon)?;
    let plan = extract_plan(&sol, &p.tables, &p.env.graph, s)?;
    let dir = &cfg.output;
    let graph = &p.env.graph;
    let values = crate::output::csv_text(
        &["state", "value", "policy_subgoal"],
        graph.states().map(|x| {
            vec![
                graph.display_name(x),
                num(sol.value(x)),
                sol.policy[x.index()]
                    .map(|z| graph.display_name(z))
                    .unwrap_or_default(),
            ]
        }),
    )?;
    let report = json!({
        "command": "plan",
        "environment": environment_json(&p.env),
        "plan": plan_json(&p, &z, &plan),
    });
    write_json(dir, "plan.json", &report)?;
    write_file(dir, "value.csv", values.as_bytes())?;
    write_file(
        dir,
        "config.echo",
        cfg.echo(&[(p.env.name.clone(), p.env.digest.clone())], &[])
            .as_bytes(),
    )?;
    Ok(cfg.output)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    EdgeList,
    Costs,
    Grid,
}

impl ExportFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "edgelist" => Some(ExportFormat::EdgeList),
            "costs" => Some(ExportFormat::Costs),
            "grid" => Some(ExportFormat::Grid),
            _ => None,
        }
    }
}

pub fn cmd_export(mut cfg: RunConfig, format: ExportFormat) -> anyhow::Result<PathBuf> {
    let name = cfg
        .env
        .clone()
        .ok_or_else(|| UsageError::new("env: no environment given"))?;
    let env = load_environment(&name)?;
    default_output(&mut cfg, format!("export-{}", file_stem(&env.name)));
    let dir = cfg.output.clone();
    let (file, text) = match format {
        ExportFormat::EdgeList => ("edges.txt", edge_list_text(&env.graph, &env.name)),
        ExportFormat::Grid => (
            "map.grid",
            render_grid(&env.graph).ok_or_else(|| {
                UsageError::new(format!(
                    "format: {} has no coordinates to render as a grid",
                    env.name
                ))
            })?,
        ),
        ExportFormat::Costs => {
            let p = prepare_env(env.clone(), &cfg)?;
            ("costs.csv", costs_csv(&p.env.graph, &p.tables)?)
        }
    };
    write_file(&dir, file, text.as_bytes())?;
    write_file(
        &dir,
        "config.echo",
        cfg.echo(&[(env.name.clone(), env.digest.clone())], &[])
            .as_bytes(),
    )?;
    Ok(dir)
}

/// Last path component without extension, for default output names.
fn file_stem(name: &str) -> String {
    std::path::Path::new(name)
        .file_stem()
        .map_or_else(|| name.to_string(), |s| s.to_string_lossy().into_owned())
}
