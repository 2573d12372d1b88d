use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{EnvError, HanoiState};

/// Dense state index, contiguous in `0..n_states` within a graph.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

impl StateId {
    #[inline]
    pub const fn new(index: usize) -> Self {
        StateId(index as u32)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Grid coordinate `(row, col)`.
pub type Coord = (i32, i32);

#[derive(Debug, Clone, PartialEq)]
struct GridShape {
    rows: usize,
    cols: usize,
    coords: Vec<Coord>,
}

/// Deterministic transition structure `T ⊆ S × S` with optional labels,
/// coordinates and per-state annotations (bottleneck flag, community).
///
/// Immutable once built; neighbour lists are sorted by ascending id.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionGraph {
    successors: Vec<Vec<StateId>>,
    directed: bool,
    labels: Vec<Option<String>>,
    label_index: BTreeMap<String, StateId>,
    grid: Option<GridShape>,
    hanoi_disks: Option<usize>,
    bottlenecks: BTreeSet<StateId>,
    community_names: Vec<String>,
    communities: Vec<Option<usize>>,
}

impl TransitionGraph {
    /// Builds a graph from explicit edges. Undirected graphs get the
    /// symmetric closure. Duplicate edges are merged; self-loops are rejected.
    pub fn from_edges(
        n_states: usize,
        edges: &[(StateId, StateId)],
        directed: bool,
    ) -> Result<Self, EnvError> {
        let mut succ: Vec<BTreeSet<StateId>> = vec![BTreeSet::new(); n_states];
        for &(a, b) in edges {
            if a.index() >= n_states {
                return Err(EnvError::UnknownState(a.index()));
            }
            if b.index() >= n_states {
                return Err(EnvError::UnknownState(b.index()));
            }
            if a == b {
                return Err(EnvError::format(0, format!("self-loop on state {a}")));
            }
            succ[a.index()].insert(b);
            if !directed {
                succ[b.index()].insert(a);
            }
        }
        Ok(TransitionGraph {
            successors: succ.into_iter().map(|s| s.into_iter().collect()).collect(),
            directed,
            labels: vec![None; n_states],
            label_index: BTreeMap::new(),
            grid: None,
            hanoi_disks: None,
            bottlenecks: BTreeSet::new(),
            community_names: Vec::new(),
            communities: vec![None; n_states],
        })
    }

    /// Attaches labels; they must be unique.
    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Result<Self, EnvError> {
        if labels.len() != self.n_states() {
            return Err(EnvError::InvalidDistribution(format!(
                "expected {} labels, got {}",
                self.n_states(),
                labels.len()
            )));
        }
        let mut index = BTreeMap::new();
        for (i, label) in labels.iter().enumerate() {
            if let Some(l) = label {
                if index.insert(l.clone(), StateId::new(i)).is_some() {
                    return Err(EnvError::format(0, format!("duplicate label `{l}`")));
                }
            }
        }
        self.labels = labels;
        self.label_index = index;
        Ok(self)
    }

    pub(crate) fn with_grid(mut self, rows: usize, cols: usize, coords: Vec<Coord>) -> Self {
        debug_assert_eq!(coords.len(), self.n_states());
        self.grid = Some(GridShape { rows, cols, coords });
        self
    }

    pub(crate) fn with_hanoi(mut self, disks: usize) -> Self {
        self.hanoi_disks = Some(disks);
        self
    }

    pub fn with_bottlenecks(mut self, states: impl IntoIterator<Item = StateId>) -> Self {
        self.bottlenecks = states.into_iter().collect();
        self
    }

    /// Declares named communities. A state belongs to at most one; later
    /// declarations win.
    pub fn with_communities(mut self, groups: Vec<(String, Vec<StateId>)>) -> Self {
        self.community_names.clear();
        self.communities = vec![None; self.n_states()];
        for (ix, (name, members)) in groups.into_iter().enumerate() {
            self.community_names.push(name);
            for m in members {
                self.communities[m.index()] = Some(ix);
            }
        }
        self
    }

    #[inline]
    pub fn n_states(&self) -> usize {
        self.successors.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.n_states()).map(StateId::new)
    }

    #[inline]
    pub fn neighbors(&self, s: StateId) -> &[StateId] {
        &self.successors[s.index()]
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn has_edge(&self, a: StateId, b: StateId) -> bool {
        self.successors[a.index()].binary_search(&b).is_ok()
    }

    /// Edge count: ordered arcs for directed graphs, unordered pairs otherwise.
    pub fn edge_count(&self) -> usize {
        let arcs: usize = self.successors.iter().map(Vec::len).sum();
        if self.directed {
            arcs
        } else {
            arcs / 2
        }
    }

    /// Edges in ascending order; undirected edges are reported once as `(a, b)`
    /// with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.states().flat_map(move |a| {
            self.neighbors(a)
                .iter()
                .copied()
                .filter(move |&b| self.directed || a < b)
                .map(move |b| (a, b))
        })
    }

    /// True when the state has neither incoming nor outgoing edges.
    pub fn is_isolated(&self, s: StateId) -> bool {
        if !self.successors[s.index()].is_empty() {
            return false;
        }
        !self.directed || !self.successors.iter().any(|succ| succ.contains(&s))
    }

    pub fn label(&self, s: StateId) -> Option<&str> {
        self.labels[s.index()].as_deref()
    }

    pub fn state_by_label(&self, label: &str) -> Option<StateId> {
        self.label_index.get(label).copied()
    }

    /// Label if present, else the grid coordinate, else the numeric id.
    pub fn display_name(&self, s: StateId) -> String {
        if let Some(l) = self.label(s) {
            return String::from(l);
        }
        if let Some((r, c)) = self.coord(s) {
            return format!("({r},{c})");
        }
        format!("{s}")
    }

    /// Resolves a state by label, `(r,c)` coordinate, or numeric id.
    pub fn resolve(&self, name: &str) -> Result<StateId, EnvError> {
        if let Some(s) = self.state_by_label(name) {
            return Ok(s);
        }
        let trimmed = name.trim();
        if let Some(inner) = trimmed.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let mut parts = inner.split(',').map(str::trim);
            if let (Some(r), Some(c), None) = (parts.next(), parts.next(), parts.next()) {
                if let (Ok(r), Ok(c)) = (r.parse::<i32>(), c.parse::<i32>()) {
                    if let Some(s) = self.state_at((r, c)) {
                        return Ok(s);
                    }
                }
            }
        }
        if let Ok(ix) = trimmed.parse::<usize>() {
            if ix < self.n_states() {
                return Ok(StateId::new(ix));
            }
        }
        Err(EnvError::UnknownLabel(String::from(name)))
    }

    pub fn has_coords(&self) -> bool {
        self.grid.is_some()
    }

    pub fn coord(&self, s: StateId) -> Option<Coord> {
        self.grid.as_ref().map(|g| g.coords[s.index()])
    }

    pub fn state_at(&self, at: Coord) -> Option<StateId> {
        let g = self.grid.as_ref()?;
        g.coords.iter().position(|&c| c == at).map(StateId::new)
    }

    /// `(rows, cols)` of the source map for grid environments.
    pub fn grid_dims(&self) -> Option<(usize, usize)> {
        self.grid.as_ref().map(|g| (g.rows, g.cols))
    }

    pub fn hanoi_disks(&self) -> Option<usize> {
        self.hanoi_disks
    }

    pub fn hanoi_state(&self, s: StateId) -> Option<HanoiState> {
        self.hanoi_disks
            .map(|n| HanoiState::from_index(s.index(), n))
    }

    pub fn bottlenecks(&self) -> &BTreeSet<StateId> {
        &self.bottlenecks
    }

    pub fn is_bottleneck(&self, s: StateId) -> bool {
        self.bottlenecks.contains(&s)
    }

    pub fn community(&self, s: StateId) -> Option<usize> {
        self.communities[s.index()]
    }

    pub fn community_names(&self) -> &[String] {
        &self.community_names
    }

    /// States reachable from `start` (including itself).
    pub fn reachable_from(&self, start: StateId) -> Vec<bool> {
        let mut seen = vec![false; self.n_states()];
        let mut queue = VecDeque::new();
        seen[start.index()] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if !seen[v.index()] {
                    seen[v.index()] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}
