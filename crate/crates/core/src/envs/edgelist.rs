use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{EnvError, StateId, TransitionGraph};

/// A parsed edge-list asset plus any non-fatal diagnostics (duplicate edges).
#[derive(Debug, Clone)]
pub struct EdgeListAsset {
    pub graph: TransitionGraph,
    pub warnings: Vec<String>,
}

/// Builds a graph from named edges. Nodes get dense ids in first-appearance
/// order.
pub fn build_graph(edges: &[(&str, &str)], directed: bool) -> Result<EdgeListAsset, EnvError> {
    let lines: Vec<(usize, &str, &str)> = edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| (i + 1, a, b))
        .collect();
    assemble(&lines, directed, &[])
}

/// Parses the edge-list file format:
///
/// ```text
/// # comment
/// directed            (optional header; default undirected)
/// a b
/// b c
/// #@ bottleneck b
/// #@ community left: a b
/// ```
///
/// `#@` lines are structured annotations; every other `#` line is a comment.
pub fn parse_edge_list(text: &str) -> Result<EdgeListAsset, EnvError> {
    let mut directed = false;
    let mut header_allowed = true;
    let mut edges = Vec::new();
    let mut annotations = Vec::new();
    for (ix, raw) in text.lines().enumerate() {
        let line_no = ix + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("#@") {
            annotations.push((line_no, rest.trim()));
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        if header_allowed && (line == "directed" || line == "undirected") {
            directed = line == "directed";
            header_allowed = false;
            continue;
        }
        header_allowed = false;
        let mut tokens = line.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => edges.push((line_no, a, b)),
            _ => {
                return Err(EnvError::format(
                    line_no,
                    format!("expected `nodeA nodeB`, got `{line}`"),
                ))
            }
        }
    }
    assemble(&edges, directed, &annotations)
}

fn assemble(
    edges: &[(usize, &str, &str)],
    directed: bool,
    annotations: &[(usize, &str)],
) -> Result<EdgeListAsset, EnvError> {
    if edges.is_empty() {
        return Err(EnvError::EmptyEdgeList);
    }
    let mut names: Vec<String> = Vec::new();
    let id_of = |name: &str, names: &mut Vec<String>| -> StateId {
        match names.iter().position(|n| n == name) {
            Some(i) => StateId::new(i),
            None => {
                names.push(String::from(name));
                StateId::new(names.len() - 1)
            }
        }
    };

    let mut seen = BTreeSet::new();
    let mut resolved = Vec::with_capacity(edges.len());
    let mut warnings = Vec::new();
    for &(line, a, b) in edges {
        if a == b {
            return Err(EnvError::format(line, format!("self-loop on `{a}`")));
        }
        let ia = id_of(a, &mut names);
        let ib = id_of(b, &mut names);
        let key = if directed || ia < ib {
            (ia, ib)
        } else {
            (ib, ia)
        };
        if !seen.insert(key) {
            warnings.push(format!("line {line}: duplicate edge {a} {b} ignored"));
            continue;
        }
        resolved.push((ia, ib));
    }

    let lookup = |line: usize, name: &str| -> Result<StateId, EnvError> {
        names
            .iter()
            .position(|n| n == name)
            .map(StateId::new)
            .ok_or_else(|| {
                EnvError::format(line, format!("annotation names unknown node `{name}`"))
            })
    };
    let mut bottlenecks = Vec::new();
    let mut communities: Vec<(String, Vec<StateId>)> = Vec::new();
    for &(line, body) in annotations {
        if let Some(rest) = body.strip_prefix("bottleneck") {
            for name in rest.split_whitespace() {
                bottlenecks.push(lookup(line, name)?);
            }
        } else if let Some(rest) = body.strip_prefix("community") {
            let (name, members) = rest
                .split_once(':')
                .ok_or_else(|| EnvError::format(line, "expected `community <name>: <nodes>`"))?;
            let members = members
                .split_whitespace()
                .map(|m| lookup(line, m))
                .collect::<Result<Vec<_>, _>>()?;
            communities.push((String::from(name.trim()), members));
        } else {
            return Err(EnvError::format(
                line,
                format!("unknown annotation `{body}`"),
            ));
        }
    }

    let n = names.len();
    let graph = TransitionGraph::from_edges(n, &resolved, directed)?
        .with_labels(names.into_iter().map(Some).collect())?
        .with_bottlenecks(bottlenecks)
        .with_communities(communities);
    Ok(EdgeListAsset { graph, warnings })
}
