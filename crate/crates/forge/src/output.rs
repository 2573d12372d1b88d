//! Report files: CSV tables, JSON summaries and environment exports.

use std::fs;
use std::path::Path;

use anyhow::Context;
use serde_json::Value;
use subgoal_forge_core::decompose::{DecompositionResult, ValueProfile};
use subgoal_forge_core::{CostTables, SubgoalSet, TransitionGraph};

/// Creates `dir` and writes `name` inside it.
pub fn write_file(dir: &Path, name: &str, contents: &[u8]) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}

pub fn write_json(dir: &Path, name: &str, value: &Value) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_file(dir, name, text.as_bytes())
}

/// Builds a CSV in memory from a header and string rows.
pub fn csv_text<I, R>(header: &[&str], rows: I) -> anyhow::Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Shortest round-tripping decimal, with `inf` / `-inf` spelled out.
pub fn num(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        v.to_string()
    }
}

pub fn names(graph: &TransitionGraph, set: &SubgoalSet) -> Vec<String> {
    set.members()
        .iter()
        .map(|&s| graph.display_name(s))
        .collect()
}

/// `rank,members,expected_value`, members joined by `;`.
pub fn decomposition_csv(
    graph: &TransitionGraph,
    result: &DecompositionResult,
) -> anyhow::Result<String> {
    csv_text(
        &["rank", "members", "expected_value"],
        result.ranked.iter().enumerate().map(|(i, r)| {
            vec![
                (i + 1).to_string(),
                names(graph, &r.set).join(";"),
                num(r.value),
            ]
        }),
    )
}

/// `state,probability` over the profile's candidate states.
pub fn profile_csv(graph: &TransitionGraph, profile: &ValueProfile) -> anyhow::Result<String> {
    csv_text(
        &["state", "probability"],
        profile
            .states
            .iter()
            .zip(&profile.probabilities)
            .map(|(&s, &p)| vec![graph.display_name(s), num(p)]),
    )
}

/// `state,probability` with one row per state.
pub fn inclusion_csv(graph: &TransitionGraph, probabilities: &[f64]) -> anyhow::Result<String> {
    csv_text(
        &["state", "probability"],
        graph
            .states()
            .zip(probabilities)
            .map(|(s, &p)| vec![graph.display_name(s), num(p)]),
    )
}

/// `from,to,distance,cost` for every ordered pair; unreachable pairs read
/// `inf`.
pub fn costs_csv(graph: &TransitionGraph, tables: &CostTables) -> anyhow::Result<String> {
    let mut rows = Vec::with_capacity(graph.n_states() * graph.n_states());
    for s in graph.states() {
        for z in graph.states() {
            rows.push(vec![
                graph.display_name(s),
                graph.display_name(z),
                tables
                    .distance(s, z)
                    .map_or_else(|| "inf".to_string(), |d| d.to_string()),
                num(tables.cost(s, z)),
            ]);
        }
    }
    csv_text(&["from", "to", "distance", "cost"], rows)
}

/// Edge-list file text, annotations included, readable by the edge-list
/// parser.
pub fn edge_list_text(graph: &TransitionGraph, name: &str) -> String {
    let mut out = format!("# environment: {name}\n# states: {}\n", graph.n_states());
    if let Some(n) = graph.hanoi_disks() {
        out += &format!("# hanoi disks: {n}\n");
    }
    if graph.is_directed() {
        out += "directed\n";
    }
    for (a, b) in graph.edges() {
        out += &format!("{} {}\n", graph.display_name(a), graph.display_name(b));
    }
    if !graph.bottlenecks().is_empty() {
        let b: Vec<String> = graph
            .bottlenecks()
            .iter()
            .map(|&s| graph.display_name(s))
            .collect();
        out += &format!("#@ bottleneck {}\n", b.join(" "));
    }
    for (i, community) in graph.community_names().iter().enumerate() {
        let members: Vec<String> = graph
            .states()
            .filter(|&s| graph.community(s) == Some(i))
            .map(|s| graph.display_name(s))
            .collect();
        out += &format!("#@ community {community}: {}\n", members.join(" "));
    }
    out
}
