use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{Coord, EnvError, StateId, TransitionGraph};

/// Parses an ASCII map: `#` is wall, `.` is floor, any other printable
/// character is a named floor tile whose label is the character itself.
///
/// Ids are assigned in row-major order. Edges join 4-adjacent floor tiles.
/// Trailing whitespace on each row and trailing blank lines are ignored.
pub fn build_grid(map_text: &str) -> Result<TransitionGraph, EnvError> {
    let mut rows: Vec<&str> = map_text.lines().map(str::trim_end).collect();
    while rows.last().is_some_and(|r| r.is_empty()) {
        rows.pop();
    }
    if rows.is_empty() {
        return Err(EnvError::EmptyEnvironment);
    }
    let cols = rows[0].chars().count();
    let mut coords: Vec<Coord> = Vec::new();
    let mut labels: Vec<Option<String>> = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        if row.chars().count() != cols {
            return Err(EnvError::format(
                r + 1,
                alloc::format!("row has {} columns, expected {cols}", row.chars().count()),
            ));
        }
        for (c, ch) in row.chars().enumerate() {
            match ch {
                '#' => {}
                '.' => {
                    coords.push((r as i32, c as i32));
                    labels.push(None);
                }
                ch if ch.is_whitespace() || ch.is_control() => {
                    return Err(EnvError::format(
                        r + 1,
                        alloc::format!("unexpected character {ch:?} at column {}", c + 1),
                    ));
                }
                ch => {
                    coords.push((r as i32, c as i32));
                    labels.push(Some(ch.to_string()));
                }
            }
        }
    }
    if coords.is_empty() {
        return Err(EnvError::EmptyEnvironment);
    }

    let mut index = vec![vec![None; cols]; rows.len()];
    for (i, &(r, c)) in coords.iter().enumerate() {
        index[r as usize][c as usize] = Some(StateId::new(i));
    }
    let mut edges = Vec::new();
    for (i, &(r, c)) in coords.iter().enumerate() {
        let (r, c) = (r as usize, c as usize);
        if let Some(Some(j)) = index.get(r + 1).map(|row| row[c]) {
            edges.push((StateId::new(i), j));
        }
        if let Some(&Some(j)) = index[r].get(c + 1) {
            edges.push((StateId::new(i), j));
        }
    }
    let n = coords.len();
    Ok(TransitionGraph::from_edges(n, &edges, false)?
        .with_labels(labels)?
        .with_grid(rows.len(), cols, coords))
}

/// Renders a grid environment back to its map text, or `None` for graphs
/// without coordinates.
pub fn render_grid(graph: &TransitionGraph) -> Option<String> {
    let (rows, cols) = graph.grid_dims()?;
    let mut cells = vec![vec!['#'; cols]; rows];
    for s in graph.states() {
        let (r, c) = graph.coord(s)?;
        cells[r as usize][c as usize] =
            graph.label(s).and_then(|l| l.chars().next()).unwrap_or('.');
    }
    let mut out = String::new();
    for row in cells {
        out.extend(row);
        out.push('\n');
    }
    Some(out)
}
