use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{astar_ranked, bfs_order, Heuristic, SearchError};
use crate::envs::{StateId, TransitionGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithm {
    #[default]
    Bfs,
    AStar,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bfs => "bfs",
            Algorithm::AStar => "astar",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "bfs" => Some(Algorithm::Bfs),
            "astar" | "a*" => Some(Algorithm::AStar),
            _ => None,
        }
    }
}

/// How equal-priority frontier states are ordered when filling the cost table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Ascending state id: the count a single deterministic search reports.
    ById,
    /// Expected count when ties are broken uniformly at random. BFS uses the
    /// closed form; A* averages `samples` random state rankings drawn from
    /// `seed`.
    Averaged { samples: u32, seed: u64 },
}

impl Default for TieBreak {
    fn default() -> Self {
        TieBreak::Averaged {
            samples: 64,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostConfig {
    pub algorithm: Algorithm,
    /// Ignored by BFS.
    pub heuristic: Heuristic,
    pub tie_break: TieBreak,
    /// Cost per expanded state.
    pub cost_weight: f64,
}

impl Default for CostConfig {
    fn default() -> Self {
        CostConfig {
            algorithm: Algorithm::Bfs,
            heuristic: Heuristic::Zero,
            tie_break: TieBreak::default(),
            cost_weight: 1.0,
        }
    }
}

impl CostConfig {
    pub fn bfs() -> Self {
        Self::default()
    }

    pub fn astar(heuristic: Heuristic) -> Self {
        CostConfig {
            algorithm: Algorithm::AStar,
            heuristic,
            ..Self::default()
        }
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }
}

const UNREACHABLE: u32 = u32::MAX;

/// All-pairs shortest-path lengths `D(s, z)` and search costs `C(s, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostTables {
    n: usize,
    dist: Vec<u32>,
    cost: Vec<f64>,
    config: CostConfig,
}

impl CostTables {
    /// Tables from explicit row-major matrices. `None` marks unreachable.
    pub fn from_matrices(n: usize, dist: &[Option<u32>], cost: &[f64]) -> Self {
        assert_eq!(dist.len(), n * n);
        assert_eq!(cost.len(), n * n);
        CostTables {
            n,
            dist: dist.iter().map(|d| d.unwrap_or(UNREACHABLE)).collect(),
            cost: cost.to_vec(),
            config: CostConfig::default(),
        }
    }

    #[inline]
    pub fn n_states(&self) -> usize {
        self.n
    }

    pub fn config(&self) -> &CostConfig {
        &self.config
    }

    #[inline]
    pub fn distance(&self, s: StateId, z: StateId) -> Option<u32> {
        let d = self.dist[s.index() * self.n + z.index()];
        (d != UNREACHABLE).then_some(d)
    }

    #[inline]
    pub fn reachable(&self, s: StateId, z: StateId) -> bool {
        self.dist[s.index() * self.n + z.index()] != UNREACHABLE
    }

    /// Search cost, `+inf` when unreachable.
    #[inline]
    pub fn cost(&self, s: StateId, z: StateId) -> f64 {
        self.cost[s.index() * self.n + z.index()]
    }

    /// `−D(s, z) − C(s, z)`, or `−inf` when unreachable.
    #[inline]
    pub fn step_value(&self, s: StateId, z: StateId) -> f64 {
        let i = s.index() * self.n + z.index();
        if self.dist[i] == UNREACHABLE {
            f64::NEG_INFINITY
        } else {
            -(self.dist[i] as f64) - self.cost[i]
        }
    }
}

/// Fills `D` and `C` for every ordered pair.
///
/// For A* the heuristic is swept for admissibility against `D` (error on the
/// first violation) and, in debug builds, checked for consistency.
pub fn all_pairs_tables(
    graph: &TransitionGraph,
    config: &CostConfig,
) -> Result<CostTables, SearchError> {
    if !(config.cost_weight > 0.0 && config.cost_weight.is_finite()) {
        return Err(SearchError::CostWeight(config.cost_weight));
    }
    if let TieBreak::Averaged { samples: 0, .. } = config.tie_break {
        return Err(SearchError::NoSamples);
    }
    let n = graph.n_states();
    let mut dist = vec![UNREACHABLE; n * n];
    let mut orders = Vec::with_capacity(n);
    for s in graph.states() {
        let (order, depth) = bfs_order(graph, s);
        dist[s.index() * n..(s.index() + 1) * n].copy_from_slice(&depth);
        orders.push(order);
    }

    let mut expansions = vec![f64::INFINITY; n * n];
    match config.algorithm {
        Algorithm::Bfs => {
            for s in graph.states() {
                let row = &dist[s.index() * n..(s.index() + 1) * n];
                match config.tie_break {
                    TieBreak::ById => {
                        for (pos, t) in orders[s.index()].iter().enumerate() {
                            expansions[s.index() * n + t.index()] = (pos + 1) as f64;
                        }
                    }
                    TieBreak::Averaged { .. } => {
                        // layer sizes by depth
                        let max_depth = row.iter().filter(|&&d| d != UNREACHABLE).max().copied();
                        let mut layer = vec![0usize; max_depth.map_or(0, |d| d as usize + 1)];
                        for &d in row.iter().filter(|&&d| d != UNREACHABLE) {
                            layer[d as usize] += 1;
                        }
                        let mut before = vec![0usize; layer.len()];
                        for d in 1..layer.len() {
                            before[d] = before[d - 1] + layer[d - 1];
                        }
                        for t in 0..n {
                            let d = row[t];
                            if d != UNREACHABLE {
                                let d = d as usize;
                                expansions[s.index() * n + t] =
                                    before[d] as f64 + (layer[d] as f64 + 1.0) / 2.0;
                            }
                        }
                    }
                }
            }
        }
        Algorithm::AStar => {
            let h = config.heuristic;
            h.check(graph)?;
            for s in graph.states() {
                for t in graph.states() {
                    let d = dist[s.index() * n + t.index()];
                    if d == UNREACHABLE {
                        continue;
                    }
                    let est = h.eval(graph, s, t);
                    if est > d {
                        return Err(SearchError::Inadmissible {
                            from: s,
                            to: t,
                            h: est,
                            distance: d,
                        });
                    }
                }
            }
            #[cfg(debug_assertions)]
            for (u, v) in graph.edges() {
                for g in graph.states() {
                    debug_assert!(h.eval(graph, u, g) <= 1 + h.eval(graph, v, g));
                    if !graph.is_directed() {
                        debug_assert!(h.eval(graph, v, g) <= 1 + h.eval(graph, u, g));
                    }
                }
            }
            let fill = |rank: Option<&[u32]>, scale: f64, acc: &mut [f64]| {
                for s in graph.states() {
                    for t in graph.states() {
                        let i = s.index() * n + t.index();
                        if dist[i] == UNREACHABLE {
                            continue;
                        }
                        let r = astar_ranked(graph, s, t, h, rank).expect("states are in range");
                        debug_assert_eq!(r.path_len, Some(dist[i]));
                        if acc[i].is_infinite() {
                            acc[i] = 0.0;
                        }
                        acc[i] += r.visited as f64 * scale;
                    }
                }
            };
            match config.tie_break {
                TieBreak::ById => fill(None, 1.0, &mut expansions),
                TieBreak::Averaged { samples, seed } => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let mut rank: Vec<u32> = (0..n as u32).collect();
                    let scale = 1.0 / samples as f64;
                    for _ in 0..samples {
                        rank.shuffle(&mut rng);
                        fill(Some(&rank), scale, &mut expansions);
                    }
                }
            }
        }
    }

    let cost = expansions
        .into_iter()
        .map(|c| c * config.cost_weight)
        .collect();
    Ok(CostTables {
        n,
        dist,
        cost,
        config: *config,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envs::{build_grid, build_hanoi};
    use crate::search::{astar, bfs};

    fn line() -> TransitionGraph {
        build_grid("...").unwrap()
    }

    #[test]
    fn line_distances() {
        let t = all_pairs_tables(&line(), &CostConfig::bfs()).unwrap();
        let want = [[0, 1, 2], [1, 0, 1], [2, 1, 0]];
        for s in 0..3 {
            for z in 0..3 {
                assert_eq!(
                    t.distance(StateId(s), StateId(z)),
                    Some(want[s as usize][z as usize])
                );
            }
        }
    }

    #[test]
    fn by_id_costs_match_single_searches() {
        let g = build_grid("....\n.#..\n....").unwrap();
        let t = all_pairs_tables(&g, &CostConfig::bfs().with_tie_break(TieBreak::ById)).unwrap();
        let ta = all_pairs_tables(
            &g,
            &CostConfig::astar(Heuristic::Manhattan).with_tie_break(TieBreak::ById),
        )
        .unwrap();
        for s in g.states() {
            for z in g.states() {
                assert_eq!(t.cost(s, z), bfs(&g, s, z).unwrap().visited as f64);
                assert_eq!(
                    ta.cost(s, z),
                    astar(&g, s, z, Heuristic::Manhattan).unwrap().visited as f64
                );
            }
        }
    }

    #[test]
    fn line_costs_hand_traced() {
        let t =
            all_pairs_tables(&line(), &CostConfig::bfs().with_tie_break(TieBreak::ById)).unwrap();
        assert_eq!(t.cost(StateId(0), StateId(2)), 3.0);
        assert_eq!(t.cost(StateId(1), StateId(2)), 3.0);
        assert_eq!(t.cost(StateId(1), StateId(0)), 2.0);
        assert_eq!(t.cost(StateId(1), StateId(1)), 1.0);
    }

    #[test]
    fn averaged_bfs_closed_form() {
        // from the centre of a line, both neighbours sit at depth 1
        let t = all_pairs_tables(&line(), &CostConfig::bfs()).unwrap();
        assert_eq!(t.cost(StateId(1), StateId(0)), 2.5);
        assert_eq!(t.cost(StateId(1), StateId(2)), 2.5);
        assert_eq!(t.cost(StateId(0), StateId(2)), 3.0);
        assert!(t.cost(StateId(0), StateId(2)) > t.cost(StateId(1), StateId(2)));
    }

    #[test]
    fn averaged_bfs_matches_exhaustive_permutations() {
        // BFS as best-first on depth with a random rank tie-break
        let g = build_grid("...\n.#.").unwrap();
        let n = g.n_states();
        let t = all_pairs_tables(&g, &CostConfig::bfs()).unwrap();
        let mut perms = alloc::vec::Vec::new();
        permutations(&mut (0..n as u32).collect::<Vec<_>>(), 0, &mut perms);
        for s in g.states() {
            for z in g.states() {
                let mut total = 0.0;
                for p in &perms {
                    total += astar_ranked(&g, s, z, Heuristic::Zero, Some(p))
                        .unwrap()
                        .visited as f64;
                }
                let mean = total / perms.len() as f64;
                assert!(
                    (mean - t.cost(s, z)).abs() < 1e-12,
                    "{s}->{z}: {mean} vs {}",
                    t.cost(s, z)
                );
            }
        }
    }

    fn permutations(v: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
        if k == v.len() {
            out.push(v.clone());
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permutations(v, k + 1, out);
            v.swap(k, i);
        }
    }

    #[test]
    fn cost_weight_scales() {
        let mut cfg = CostConfig::bfs();
        cfg.cost_weight = 2.0;
        let t = all_pairs_tables(&line(), &cfg).unwrap();
        assert_eq!(t.cost(StateId(0), StateId(2)), 6.0);
        cfg.cost_weight = 0.0;
        assert!(all_pairs_tables(&line(), &cfg).is_err());
    }

    #[test]
    fn averaged_astar_is_seed_deterministic() {
        let g = build_hanoi(2).unwrap();
        let cfg = CostConfig::astar(Heuristic::HanoiEdit);
        assert_eq!(
            all_pairs_tables(&g, &cfg).unwrap(),
            all_pairs_tables(&g, &cfg).unwrap()
        );
    }

    #[test]
    fn heuristic_requirements_surface() {
        let g = build_hanoi(2).unwrap();
        assert_eq!(
            all_pairs_tables(&g, &CostConfig::astar(Heuristic::Manhattan)).unwrap_err(),
            SearchError::MissingCoordinates
        );
    }

    #[test]
    fn unreachable_pairs() {
        let g = build_grid(".#.").unwrap();
        let t = all_pairs_tables(&g, &CostConfig::bfs()).unwrap();
        assert_eq!(t.distance(StateId(0), StateId(1)), None);
        assert!(t.cost(StateId(0), StateId(1)).is_infinite());
        assert_eq!(t.step_value(StateId(0), StateId(1)), f64::NEG_INFINITY);
    }
}
