use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::envs::TransitionGraph;

/// Brandes betweenness centrality on unit-weight edges. Undirected graphs
/// count each pair once.
pub fn betweenness(graph: &TransitionGraph) -> Vec<f64> {
    let n = graph.n_states();
    let mut cb = vec![0.0; n];
    for s in graph.states() {
        let mut stack = Vec::with_capacity(n);
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut sigma = vec![0.0f64; n];
        let mut dist = vec![-1i64; n];
        sigma[s.index()] = 1.0;
        dist[s.index()] = 0;
        let mut queue = VecDeque::from([s.index()]);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for w in graph.neighbors(crate::envs::StateId::new(v)) {
                let w = w.index();
                if dist[w] < 0 {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        let mut delta = vec![0.0; n];
        while let Some(w) = stack.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s.index() {
                cb[w] += delta[w];
            }
        }
    }
    if !graph.is_directed() {
        for c in &mut cb {
            *c /= 2.0;
        }
    }
    cb
}
