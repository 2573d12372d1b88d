use alloc::vec::Vec;

use super::{candidate_pool, rank_sets, DecomposeError, DecompositionResult, Method, RankedSet};
use crate::envs::{StateId, TaskDistribution};
use crate::hplan::{expected_value, SubgoalSet};
use crate::search::CostTables;

/// Largest number of subgoal sets enumeration will evaluate.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Evaluates every subgoal set of size at most `k` drawn from the candidate
/// pool and ranks them.
pub fn enumerate_decompositions(
    tables: &CostTables,
    tasks: &TaskDistribution,
    k: usize,
    epsilon: f64,
) -> Result<DecompositionResult, DecomposeError> {
    let pool = candidate_pool(tables, tasks);
    let k = k.min(pool.len());
    let total: u128 = (0..=k as u128)
        .map(|i| binomial(pool.len() as u128, i))
        .fold(0u128, u128::saturating_add);
    if total > ENUMERATION_LIMIT {
        return Err(DecomposeError::Intractable {
            sets: total,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut ranked = Vec::with_capacity(total as usize);
    let mut members: Vec<StateId> = Vec::with_capacity(k);
    for size in 0..=k {
        for_each_combination(&pool, size, &mut members, 0, &mut |combo| {
            let set = SubgoalSet::new(combo.iter().copied());
            let value = expected_value(tables, &set, tasks, epsilon)?;
            ranked.push(RankedSet { set, value });
            Ok(())
        })?;
    }
    let baseline = ranked[0].value;
    rank_sets(&mut ranked);
    Ok(DecompositionResult {
        method: Method::Enumeration,
        k,
        ranked,
        baseline,
    })
}

fn for_each_combination<F>(
    pool: &[StateId],
    size: usize,
    acc: &mut Vec<StateId>,
    from: usize,
    f: &mut F,
) -> Result<(), DecomposeError>
where
    F: FnMut(&[StateId]) -> Result<(), crate::hplan::HplanError>,
{
    if acc.len() == size {
        return f(acc).map_err(DecomposeError::from);
    }
    let need = size - acc.len();
    for i in from..=pool.len() - need {
        acc.push(pool[i]);
        for_each_combination(pool, size, acc, i + 1, f)?;
        acc.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envs::{build_grid, uniform_tasks};
    use crate::search::{all_pairs_tables, CostConfig};

    #[test]
    fn binomials() {
        assert_eq!(binomial(27, 3), 2925);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn budget_zero_is_baseline() {
        let g = build_grid("....").unwrap();
        let t = all_pairs_tables(&g, &CostConfig::bfs()).unwrap();
        let tasks = uniform_tasks(&g, None).unwrap();
        let r = enumerate_decompositions(&t, &tasks, 0, 1e-5).unwrap();
        assert_eq!(r.ranked.len(), 1);
        assert!(r.optimum().set.is_empty());
        assert_eq!(r.optimum().value, r.baseline);
    }

    #[test]
    fn counts_every_set_up_to_k() {
        let g = build_grid("...\n...").unwrap();
        let t = all_pairs_tables(&g, &CostConfig::bfs()).unwrap();
        let tasks = uniform_tasks(&g, None).unwrap();
        let r = enumerate_decompositions(&t, &tasks, 2, 1e-5).unwrap();
        assert_eq!(r.ranked.len(), 1 + 6 + 15);
        for w in r.ranked.windows(2) {
            assert!(w[0].value >= w[1].value - 1e-9);
        }
    }

    #[test]
    fn budget_monotone() {
        let g = build_grid("....\n.#..\n....").unwrap();
        let t = all_pairs_tables(&g, &CostConfig::bfs()).unwrap();
        let tasks = uniform_tasks(&g, None).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for k in 0..3 {
            let v = enumerate_decompositions(&t, &tasks, k, 1e-5)
                .unwrap()
                .optimum()
                .value;
            assert!(v >= prev - 1e-12);
            prev = v;
        }
    }

    #[test]
    fn guard_trips() {
        let g = build_grid(&"..........\n".repeat(10)).unwrap();
        let t = all_pairs_tables(&g, &CostConfig::bfs()).unwrap();
        let tasks = uniform_tasks(&g, Some(&[StateId(0), StateId(99)])).unwrap();
        assert!(matches!(
            enumerate_decompositions(&t, &tasks, 6, 1e-5),
            Err(DecomposeError::Intractable { .. })
        ));
    }
}
