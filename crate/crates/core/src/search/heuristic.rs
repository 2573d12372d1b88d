use super::SearchError;
use crate::envs::{Coord, HanoiState, StateId, TransitionGraph};

/// Admissible distance estimates under unit step costs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Heuristic {
    #[default]
    Zero,
    Manhattan,
    HanoiEdit,
}

impl Heuristic {
    pub fn name(self) -> &'static str {
        match self {
            Heuristic::Zero => "zero",
            Heuristic::Manhattan => "manhattan",
            Heuristic::HanoiEdit => "hanoi_edit",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "zero" => Some(Heuristic::Zero),
            "manhattan" => Some(Heuristic::Manhattan),
            "hanoi_edit" | "hanoi-edit" => Some(Heuristic::HanoiEdit),
            _ => None,
        }
    }

    /// Fails if the graph lacks what this heuristic reads.
    pub fn check(self, graph: &TransitionGraph) -> Result<(), SearchError> {
        match self {
            Heuristic::Zero => Ok(()),
            Heuristic::Manhattan if graph.has_coords() => Ok(()),
            Heuristic::Manhattan => Err(SearchError::MissingCoordinates),
            Heuristic::HanoiEdit if graph.hanoi_disks().is_some() => Ok(()),
            Heuristic::HanoiEdit => Err(SearchError::NotHanoi),
        }
    }

    /// Estimate for `(s, g)`. Call [`Heuristic::check`] first; missing data
    /// evaluates to 0.
    pub fn eval(self, graph: &TransitionGraph, s: StateId, g: StateId) -> u32 {
        match self {
            Heuristic::Zero => 0,
            Heuristic::Manhattan => match (graph.coord(s), graph.coord(g)) {
                (Some(a), Some(b)) => manhattan(a, b),
                _ => 0,
            },
            Heuristic::HanoiEdit => match graph.hanoi_disks() {
                Some(n) => {
                    let (mut a, mut b) = (s.index(), g.index());
                    let mut d = 0;
                    for _ in 0..n {
                        d += u32::from(a % 3 != b % 3);
                        a /= 3;
                        b /= 3;
                    }
                    d
                }
                None => 0,
            },
        }
    }
}

pub fn manhattan(a: Coord, b: Coord) -> u32 {
    (a.0 - b.0).unsigned_abs() + (a.1 - b.1).unsigned_abs()
}

pub fn hanoi_edit_distance(s: &HanoiState, g: &HanoiState) -> Result<u32, SearchError> {
    s.edit_distance(g)
        .map(|d| d as u32)
        .map_err(|_| SearchError::NotHanoi)
}
