use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{EnvError, StateId, TransitionGraph};

pub const MAX_HANOI_DISKS: usize = 8;
const PEGS: u8 = 3;

/// Peg assignment per disk, disk 0 being the smallest.
///
/// The state index is `Σ pegs[i] · 3^i`, so disk 0 is the least significant
/// base-3 digit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HanoiState {
    pub pegs: Vec<u8>,
}

impl HanoiState {
    pub fn from_index(mut index: usize, disks: usize) -> Self {
        let mut pegs = Vec::with_capacity(disks);
        for _ in 0..disks {
            pegs.push((index % 3) as u8);
            index /= 3;
        }
        HanoiState { pegs }
    }

    pub fn index(&self) -> usize {
        self.pegs
            .iter()
            .rev()
            .fold(0, |acc, &p| acc * 3 + p as usize)
    }

    pub fn disks(&self) -> usize {
        self.pegs.len()
    }

    /// Smallest disk on `peg`, if any.
    pub fn top(&self, peg: u8) -> Option<usize> {
        self.pegs.iter().position(|&p| p == peg)
    }

    /// Every configuration reachable by one legal move.
    pub fn moves(&self) -> Vec<HanoiState> {
        let mut out = Vec::new();
        for from in 0..PEGS {
            let Some(disk) = self.top(from) else { continue };
            for to in 0..PEGS {
                if to == from {
                    continue;
                }
                if self.top(to).is_some_and(|t| t < disk) {
                    continue;
                }
                let mut next = self.clone();
                next.pegs[disk] = to;
                out.push(next);
            }
        }
        out
    }

    /// Number of disks whose peg differs.
    pub fn edit_distance(&self, other: &HanoiState) -> Result<usize, EnvError> {
        if self.disks() != other.disks() {
            return Err(EnvError::DiskMismatch(self.disks(), other.disks()));
        }
        Ok(self
            .pegs
            .iter()
            .zip(&other.pegs)
            .filter(|(a, b)| a != b)
            .count())
    }

    pub fn label(&self) -> String {
        self.pegs.iter().map(|&p| char::from(b'0' + p)).collect()
    }
}

/// Tower of Hanoi state graph with `3^n` states.
///
/// States that are an endpoint of a largest-disk move are flagged as
/// bottlenecks; communities are keyed by the peg holding the largest disk.
#[allow(clippy::needless_range_loop)]
pub fn build_hanoi(n_disks: usize) -> Result<TransitionGraph, EnvError> {
    if !(1..=MAX_HANOI_DISKS).contains(&n_disks) {
        return Err(EnvError::Capacity {
            requested: n_disks,
            max: MAX_HANOI_DISKS,
        });
    }
    let n = 3usize.pow(n_disks as u32);
    let largest = n_disks - 1;
    let mut edges = Vec::new();
    let mut bottleneck = vec![false; n];
    let mut labels = Vec::with_capacity(n);
    let mut groups: Vec<Vec<StateId>> = vec![Vec::new(); PEGS as usize];
    for i in 0..n {
        let state = HanoiState::from_index(i, n_disks);
        labels.push(Some(state.label()));
        groups[state.pegs[largest] as usize].push(StateId::new(i));
        for next in state.moves() {
            let j = next.index();
            if i < j {
                edges.push((StateId::new(i), StateId::new(j)));
            }
            if next.pegs[largest] != state.pegs[largest] {
                bottleneck[i] = true;
            }
        }
    }
    let communities = groups
        .into_iter()
        .enumerate()
        .map(|(peg, members)| (alloc::format!("peg{peg}"), members))
        .collect();
    Ok(TransitionGraph::from_edges(n, &edges, false)?
        .with_labels(labels)?
        .with_hanoi(n_disks)
        .with_bottlenecks(
            bottleneck
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| StateId::new(i)),
        )
        .with_communities(communities))
}
