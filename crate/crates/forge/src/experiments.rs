//! End-to-end replication runs behind `experiment <name>`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde_json::{json, Value};
use subgoal_forge_core::decompose::used_subgoals;
use subgoal_forge_core::experiments::{
    hanoi_path_preference, problems_of_interest, run_probe_battery, Answer,
};
use subgoal_forge_core::hplan::{extract_plan, value_iteration};
use subgoal_forge_core::search::{astar, bfs};
use subgoal_forge_core::{Algorithm, Heuristic, StateId, SubgoalSet};

use crate::assets::load_environment;
use crate::commands::{
    decompose, decomposition_json, environment_json, prepare, prepare_env, set_json, Decomposition,
    Prepared,
};
use crate::config::RunConfig;
use crate::output::{csv_text, decomposition_csv, num, write_file, write_json};
use crate::UsageError;

pub const EXPERIMENTS: &[&str] = &[
    "schapiro",
    "solway1",
    "solway23",
    "hanoi-bfs",
    "hanoi-astar",
    "gridworlds",
];

/// Keys fixed per environment in the gridworld demo.
const GRIDWORLD_FIXED: &[&str] = &[
    "env",
    "algorithm",
    "heuristic",
    "k",
    "support",
    "subgoals",
    "method",
];

/// Files and summary produced by one experiment.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub name: String,
    pub report: Value,
    /// File name and contents, written in this order.
    pub files: Vec<(String, String)>,
}

/// Published defaults for `name`. Settings from a config file or flags are
/// applied on top by the caller.
pub fn preset(name: &str) -> Result<RunConfig, UsageError> {
    let mut c = RunConfig::default();
    let (env, k) = match name {
        "schapiro" => ("schapiro", 3),
        "solway1" => ("solway-exp1", 1),
        "solway23" => ("solway-exp23", 1),
        "hanoi-bfs" => ("hanoi3", 3),
        "hanoi-astar" => {
            c.algorithm = Algorithm::AStar;
            c.heuristic = Heuristic::HanoiEdit;
            ("hanoi3", 3)
        }
        "gridworlds" => return Ok(c),
        _ => {
            return Err(UsageError::new(format!(
                "unknown experiment `{name}`; expected one of {}",
                EXPERIMENTS.join(", ")
            )))
        }
    };
    c.env = Some(env.into());
    c.k = k;
    Ok(c)
}

pub fn run_experiment(name: &str, cfg: &RunConfig) -> anyhow::Result<ExperimentOutput> {
    match name {
        "schapiro" => schapiro(cfg),
        "solway1" => solway1(cfg),
        "solway23" => solway23(cfg),
        "hanoi-bfs" | "hanoi-astar" => hanoi(name, cfg),
        "gridworlds" => {
            if let Some(key) = GRIDWORLD_FIXED.iter().find(|k| cfg.is_set(k)) {
                return Err(UsageError::new(format!(
                    "{key}: fixed per environment in the gridworlds experiment"
                ))
                .into());
            }
            gridworlds(cfg)
        }
        _ => Err(preset(name).unwrap_err().into()),
    }
}

/// Runs `name` and writes its files plus `config.echo` to `cfg.output`
/// (default `runs/<name>`).
pub fn cmd_experiment(name: &str, mut cfg: RunConfig) -> anyhow::Result<PathBuf> {
    if !cfg.is_set("output") {
        cfg.output = PathBuf::from("runs").join(name);
    }
    let out = run_experiment(name, &cfg)?;
    for (file, text) in &out.files {
        write_file(&cfg.output, file, text.as_bytes())?;
    }
    write_json(&cfg.output, "report.json", &out.report)?;
    let digests = digests(name, &cfg)?;
    let omit: &[&str] = if name == "gridworlds" {
        GRIDWORLD_FIXED
    } else {
        &[]
    };
    write_file(
        &cfg.output,
        "config.echo",
        cfg.echo(&digests, omit).as_bytes(),
    )?;
    Ok(cfg.output)
}

fn digests(name: &str, cfg: &RunConfig) -> anyhow::Result<Vec<(String, String)>> {
    let envs: Vec<String> = if name == "gridworlds" {
        GRIDWORLDS.iter().map(|g| g.env.to_string()).collect()
    } else {
        cfg.env.iter().cloned().collect()
    };
    envs.into_iter()
        .map(|e| Ok((e.clone(), load_environment(&e)?.digest)))
        .collect()
}

fn standard(
    name: &str,
    p: &Prepared,
    cfg: &RunConfig,
    d: &Decomposition,
) -> anyhow::Result<ExperimentOutput> {
    Ok(ExperimentOutput {
        name: name.to_string(),
        report: json!({
            "experiment": name,
            "environment": environment_json(&p.env),
            "tasks": p.tasks.len(),
            "decomposition": decomposition_json(p, cfg, d)?,
        }),
        files: vec![
            (
                "decomposition.csv".into(),
                decomposition_csv(&p.env.graph, &d.result)?,
            ),
            ("profile.csv".into(), d.profile_csv(p)?),
        ],
    })
}

fn schapiro(cfg: &RunConfig) -> anyhow::Result<ExperimentOutput> {
    let p = prepare(cfg)?;
    let d = decompose(&p, cfg)?;
    let g = &p.env.graph;
    let best = d.result.optimum();
    let boundary = best.set.members().iter().all(|&s| g.is_bottleneck(s));
    let communities: Vec<Option<String>> = best
        .set
        .members()
        .iter()
        .map(|&s| g.community(s).map(|c| g.community_names()[c].clone()))
        .collect();
    // best set whose members all sit inside communities
    let interior = d.result.ranked.iter().find(|r| {
        r.set.len() == best.set.len() && r.set.members().iter().all(|&s| !g.is_bottleneck(s))
    });
    let mut out = standard("schapiro", &p, cfg, &d)?;
    out.report["checks"] = json!({
        "optimum_all_boundary": boundary && best.set.len() == 3,
        "optimum_communities": communities,
        "beats_baseline": best.value > d.result.baseline,
        "best_interior_value": interior.map(|r| r.value),
    });
    Ok(out)
}

fn solway1(cfg: &RunConfig) -> anyhow::Result<ExperimentOutput> {
    let p = prepare(cfg)?;
    let d = decompose(&p, cfg)?;
    let best_singleton = d.result.ranked.iter().find(|r| r.set.len() == 1);
    let used = match best_singleton {
        Some(r) => Some(used_subgoals(&p.tables, &p.tasks, &r.set, cfg.epsilon)?),
        None => None,
    };
    let mut out = standard("solway1", &p, cfg, &d)?;
    out.report["checks"] = json!({
        "optimum_is_empty": d.result.optimum().set.is_empty(),
        "best_singleton": best_singleton.map(|r| set_json(&p, &r.set, r.value)),
        "best_singleton_gain": best_singleton.map(|r| r.value - d.result.baseline),
        "best_singleton_used": used.map(|u| crate::output::names(&p.env.graph, &u)),
    });
    Ok(out)
}

fn solway23(cfg: &RunConfig) -> anyhow::Result<ExperimentOutput> {
    let p = prepare(cfg)?;
    let d = decompose(&p, cfg)?;
    let g = &p.env.graph;
    let best = &d.result.optimum().set;
    let adjacent = |s: StateId| {
        g.bottlenecks()
            .iter()
            .any(|&b| g.has_edge(b, s) || g.has_edge(s, b))
    };
    let runners_up: Vec<bool> = d
        .result
        .ranked
        .iter()
        .skip(1)
        .take(4)
        .map(|r| r.set.members().iter().any(|&s| adjacent(s)))
        .collect();
    let battery = run_probe_battery(&p.tables, g, best, cfg.epsilon)?;
    let cells = csv_text(
        &["answer", "bottleneck", "trials", "mean_steps"],
        battery.cells.iter().map(|c| {
            vec![
                format!("{:?}", c.answer).to_lowercase(),
                c.bottleneck.to_string(),
                c.trials.to_string(),
                num(c.mean_steps),
            ]
        }),
    )?;
    let faster = |a: Answer| battery.cell(a, true).mean_steps < battery.cell(a, false).mean_steps;
    let mut out = standard("solway23", &p, cfg, &d)?;
    out.files.push(("probe_cells.csv".into(), cells));
    out.report["checks"] = json!({
        "rank1_is_bottleneck": best.len() == 1 && g.is_bottleneck(best.members()[0]),
        "ranks_2_to_5_adjacent": runners_up,
        "profile_mode_is_bottleneck": d.profile_mode().is_some_and(|s| g.is_bottleneck(s)),
        "probe_design_complete": battery.is_complete(),
        "probe_skipped_pairs": battery.skipped,
        "bottleneck_faster_affirm": faster(Answer::Affirm),
        "bottleneck_faster_reject": faster(Answer::Reject),
    });
    Ok(out)
}

fn hanoi(name: &str, cfg: &RunConfig) -> anyhow::Result<ExperimentOutput> {
    let p = prepare(cfg)?;
    let d = decompose(&p, cfg)?;
    let g = &p.env.graph;
    let describe = |set: &SubgoalSet| -> Vec<Value> {
        set.members()
            .iter()
            .map(|&s| {
                let nearest = g
                    .bottlenecks()
                    .iter()
                    .filter(|&&b| set.contains(b) && b != s)
                    .filter_map(|&b| p.tables.distance(b, s))
                    .min();
                json!({
                    "state": g.display_name(s),
                    "bottleneck": g.is_bottleneck(s),
                    "community": g.community(s).map(|c| g.community_names()[c].clone()),
                    "distance_to_other_bottleneck": nearest,
                })
            })
            .collect()
    };
    let top: Vec<Value> = d
        .result
        .ranked
        .iter()
        .take(5)
        .map(|r| json!({ "expected_value": r.value, "members": describe(&r.set) }))
        .collect();

    let best = &d.result.optimum().set;
    let mut rows = Vec::new();
    let (mut preferred_fewer, mut preferred_more, mut indifferent) = (0usize, 0usize, 0usize);
    for (s, goal) in problems_of_interest(g, &p.tables) {
        let pref = hanoi_path_preference(g, &p.tables, best, s, goal)?;
        let counts: Vec<usize> = pref.paths.iter().map(|x| x.bottleneck_count).collect();
        let (lo, hi) = (*counts.iter().min().unwrap(), *counts.iter().max().unwrap());
        let chosen = pref.preferred.map(|i| &pref.paths[i]);
        match chosen {
            None => indifferent += 1,
            Some(c) if c.bottleneck_count < hi => preferred_fewer += 1,
            Some(_) => preferred_more += 1,
        }
        rows.push(vec![
            g.display_name(s),
            g.display_name(goal),
            pref.paths.len().to_string(),
            chosen.map_or_else(String::new, |c| {
                c.path
                    .iter()
                    .map(|&x| g.display_name(x))
                    .collect::<Vec<_>>()
                    .join(";")
            }),
            chosen.map_or_else(String::new, |c| c.bottleneck_count.to_string()),
            lo.to_string(),
            hi.to_string(),
        ]);
    }
    let pref_csv = csv_text(
        &[
            "start",
            "goal",
            "paths",
            "preferred_path",
            "preferred_bottlenecks",
            "min_bottlenecks",
            "max_bottlenecks",
        ],
        rows,
    )?;

    let mut out = standard(name, &p, cfg, &d)?;
    out.files.push(("path_preference.csv".into(), pref_csv));
    out.report["top"] = json!(top);
    out.report["path_preference"] = json!({
        "problems": preferred_fewer + preferred_more + indifferent,
        "preferred_fewer_bottlenecks": preferred_fewer,
        "preferred_not_fewer": preferred_more,
        "indifferent": indifferent,
    });
    Ok(out)
}

struct GridDemo {
    env: &'static str,
    algorithm: Algorithm,
    heuristic: Heuristic,
    k: usize,
    start: &'static str,
    goal: &'static str,
}

const GRIDWORLDS: &[GridDemo] = &[
    GridDemo {
        env: "open-field",
        algorithm: Algorithm::Bfs,
        heuristic: Heuristic::Zero,
        k: 1,
        start: "S",
        goal: "G",
    },
    GridDemo {
        env: "two-room",
        algorithm: Algorithm::AStar,
        heuristic: Heuristic::Manhattan,
        k: 1,
        start: "S",
        goal: "G",
    },
    GridDemo {
        env: "indoor-outdoor",
        algorithm: Algorithm::Bfs,
        heuristic: Heuristic::Zero,
        k: 2,
        start: "1",
        goal: "3",
    },
];

/// Visited counts for one figure task, with and without subgoals.
#[derive(Debug, Clone, PartialEq)]
pub struct GridTask {
    pub env: String,
    pub subgoals: Vec<String>,
    pub visited_without: usize,
    pub visited_with: usize,
}

impl GridTask {
    pub fn reduction(&self) -> f64 {
        1.0 - self.visited_with as f64 / self.visited_without as f64
    }
}

/// The gridworld figure tasks under `cfg`'s shared settings.
pub fn gridworld_tasks(
    cfg: &RunConfig,
) -> anyhow::Result<Vec<(GridTask, Prepared, Decomposition)>> {
    let mut out = Vec::new();
    for demo in GRIDWORLDS {
        let mut c = cfg.clone();
        c.env = Some(demo.env.into());
        c.algorithm = demo.algorithm;
        c.heuristic = demo.heuristic;
        c.k = demo.k;
        let p = prepare_env(load_environment(demo.env)?, &c)?;
        let d = decompose(&p, &c)?;
        let g = &p.env.graph;
        let (s, goal) = (p.env.resolve(demo.start)?, p.env.resolve(demo.goal)?);
        let without = match demo.algorithm {
            Algorithm::Bfs => bfs(g, s, goal)?,
            Algorithm::AStar => astar(g, s, goal, demo.heuristic)?,
        }
        .visited;
        let z = d.result.optimum().set.clone();
        let sol = value_iteration(&p.tables, &z, goal, c.epsilon)?;
        let plan = extract_plan(&sol, &p.tables, g, s)?;
        let task = GridTask {
            env: demo.env.into(),
            subgoals: crate::output::names(g, &z),
            visited_without: without,
            visited_with: plan.segment_visits.iter().sum(),
        };
        out.push((task, p, d));
    }
    Ok(out)
}

/// Per state, the first subgoal chosen most often across the task
/// distribution's goals (weighted by goal mass). `goal` when the state heads
/// straight for the task goal.
fn policy_map(p: &Prepared, z: &SubgoalSet, epsilon: f64) -> anyhow::Result<Vec<Vec<String>>> {
    let g = &p.env.graph;
    let mut tallies: Vec<BTreeMap<String, f64>> = vec![BTreeMap::new(); g.n_states()];
    for (goal, starts) in p.tasks.by_goal() {
        let mass: f64 = starts.iter().map(|(_, m)| m).sum();
        let sol = value_iteration(&p.tables, z, goal, epsilon)?;
        for s in g.states() {
            if let Some(next) = sol.policy[s.index()] {
                let key = if next == goal {
                    "goal".to_string()
                } else {
                    g.display_name(next)
                };
                *tallies[s.index()].entry(key).or_insert(0.0) += mass;
            }
        }
    }
    Ok(g.states()
        .map(|s| {
            let (r, c) = g.coord(s).unwrap_or((0, 0));
            let mut modal = String::new();
            let mut best = f64::NEG_INFINITY;
            for (k, &w) in &tallies[s.index()] {
                if w > best + 1e-12 {
                    best = w;
                    modal = k.clone();
                }
            }
            vec![
                p.env.name.clone(),
                r.to_string(),
                c.to_string(),
                g.display_name(s),
                modal,
            ]
        })
        .collect())
}

fn gridworlds(cfg: &RunConfig) -> anyhow::Result<ExperimentOutput> {
    let runs = gridworld_tasks(cfg)?;
    let mut files = Vec::new();
    let mut rows = Vec::new();
    let mut policy_rows = Vec::new();
    let mut summary = Vec::new();
    for ((task, p, d), demo) in runs.iter().zip(GRIDWORLDS) {
        rows.push(vec![
            task.env.clone(),
            demo.algorithm.name().to_string(),
            demo.heuristic.name().to_string(),
            demo.k.to_string(),
            demo.start.to_string(),
            demo.goal.to_string(),
            task.subgoals.join(";"),
            task.visited_without.to_string(),
            task.visited_with.to_string(),
            num(task.reduction()),
        ]);
        policy_rows.extend(policy_map(p, &d.result.optimum().set, cfg.epsilon)?);
        files.push((
            format!("decomposition-{}.csv", task.env),
            decomposition_csv(&p.env.graph, &d.result)?,
        ));
        let mut c = cfg.clone();
        c.k = demo.k;
        summary.push(json!({
            "environment": environment_json(&p.env),
            "algorithm": demo.algorithm.name(),
            "heuristic": demo.heuristic.name(),
            "task": { "start": demo.start, "goal": demo.goal },
            "decomposition": decomposition_json(p, &c, d)?,
            "visited_without": task.visited_without,
            "visited_with": task.visited_with,
            "reduction": task.reduction(),
        }));
    }
    files.insert(
        0,
        (
            "gridworlds.csv".into(),
            csv_text(
                &[
                    "env",
                    "algorithm",
                    "heuristic",
                    "k",
                    "start",
                    "goal",
                    "subgoals",
                    "visited_without",
                    "visited_with",
                    "reduction",
                ],
                rows,
            )?,
        ),
    );
    files.insert(
        1,
        (
            "policy_map.csv".into(),
            csv_text(
                &["env", "row", "col", "state", "modal_subgoal"],
                policy_rows,
            )?,
        ),
    );
    Ok(ExperimentOutput {
        name: "gridworlds".into(),
        report: json!({ "experiment": "gridworlds", "runs": summary }),
        files,
    })
}
