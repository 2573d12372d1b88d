use alloc::vec;
use alloc::vec::Vec;

use crate::envs::TransitionGraph;

/// All-pairs shortest paths by Floyd-Warshall relaxation over the adjacency
/// matrix. Shares no code with the search routines; used as a test oracle.
#[allow(clippy::needless_range_loop)]
pub fn oracle_all_pairs(graph: &TransitionGraph) -> Vec<Vec<Option<u32>>> {
    let n = graph.n_states();
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for (a, b) in graph.edges() {
        d[a.index()][b.index()] = Some(1);
        if !graph.is_directed() {
            d[b.index()][a.index()] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k] else { continue };
            for j in 0..n {
                if let Some(kj) = d[k][j] {
                    let via = ik + kj;
                    if d[i][j].is_none_or(|cur| via < cur) {
                        d[i][j] = Some(via);
                    }
                }
            }
        }
    }
    d
}
