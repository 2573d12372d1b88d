use alloc::vec;
use alloc::vec::Vec;

use super::{HplanError, SubgoalSet};
use crate::envs::{StateId, TaskDistribution};
use crate::search::CostTables;

pub const DEFAULT_EPSILON: f64 = 1e-5;
pub const MAX_SWEEPS: usize = 100_000;

/// Values within this margin of the best count as tied for policy extraction.
const TIE_TOLERANCE: f64 = 1e-9;

/// Fixed point of the subtask-level Bellman equation for one goal.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueSolution {
    pub goal: StateId,
    pub values: Vec<f64>,
    /// Next subgoal per state; `None` at the goal and where the goal is
    /// unreachable.
    pub policy: Vec<Option<StateId>>,
    pub residual: f64,
    pub iterations: usize,
    /// States from which the goal cannot be reached (value `-inf`).
    pub unreachable: Vec<StateId>,
}

impl ValueSolution {
    pub fn value(&self, s: StateId) -> f64 {
        self.values[s.index()]
    }
}

/// Candidates `Z ∪ {g}` that can themselves reach `g`, ascending.
pub(crate) fn candidates(tables: &CostTables, z: &SubgoalSet, g: StateId) -> Vec<StateId> {
    let mut c: Vec<StateId> = z
        .members()
        .iter()
        .copied()
        .filter(|&m| tables.reachable(m, g))
        .chain(core::iter::once(g))
        .collect();
    c.sort_unstable();
    c.dedup();
    c
}

/// Best candidate for `s` given candidate values. Excludes `z = s`; ties
/// prefer the goal, then the lowest id.
fn best_choice(
    tables: &CostTables,
    cands: &[StateId],
    cand_values: &[f64],
    g: StateId,
    s: StateId,
) -> Option<(StateId, f64)> {
    let mut best = f64::NEG_INFINITY;
    for (i, &c) in cands.iter().enumerate() {
        if c != s {
            let q = tables.step_value(s, c) + cand_values[i];
            if q > best {
                best = q;
            }
        }
    }
    if best == f64::NEG_INFINITY {
        return None;
    }
    let mut pick = None;
    for (i, &c) in cands.iter().enumerate() {
        if c == s {
            continue;
        }
        let q = tables.step_value(s, c) + cand_values[i];
        if q >= best - TIE_TOLERANCE {
            if c == g {
                return Some((g, best));
            }
            if pick.is_none() {
                pick = Some(c);
            }
        }
    }
    pick.map(|c| (c, best))
}

/// Solves `V(s) = max_{z ∈ Z ∪ {g}} −D(s,z) − C(s,z) + V(z)` with `V(g) = 0`,
/// starting from `V ≡ 0`.
///
/// Only candidate states feed back into the recursion, so sweeps run over the
/// candidates until their values move by less than `epsilon`; every other
/// state is then one maximisation away.
pub fn value_iteration(
    tables: &CostTables,
    z: &SubgoalSet,
    g: StateId,
    epsilon: f64,
) -> Result<ValueSolution, HplanError> {
    let n = tables.n_states();
    if g.index() >= n {
        return Err(HplanError::UnknownState(g));
    }
    if let Some(&bad) = z.members().iter().find(|m| m.index() >= n) {
        return Err(HplanError::UnknownState(bad));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(HplanError::Epsilon(epsilon));
    }
    let cands = candidates(tables, z, g);
    let mut cv = vec![0.0; cands.len()];
    let mut next = cv.clone();
    let mut iterations = 0;
    loop {
        if iterations >= MAX_SWEEPS {
            return Err(HplanError::Diverged(iterations));
        }
        iterations += 1;
        let mut diff: f64 = 0.0;
        for (i, &c) in cands.iter().enumerate() {
            next[i] = if c == g {
                0.0
            } else {
                best_choice(tables, &cands, &cv, g, c).map_or(f64::NEG_INFINITY, |(_, v)| v)
            };
            if next[i].is_finite() && cv[i].is_finite() {
                diff = diff.max((next[i] - cv[i]).abs());
            }
        }
        core::mem::swap(&mut cv, &mut next);
        if diff < epsilon {
            break;
        }
    }

    let mut values = vec![f64::NEG_INFINITY; n];
    let mut policy = vec![None; n];
    let mut unreachable = Vec::new();
    for s in 0..n {
        let s = StateId::new(s);
        if s == g {
            values[s.index()] = 0.0;
            continue;
        }
        match best_choice(tables, &cands, &cv, g, s) {
            Some((c, v)) => {
                values[s.index()] = v;
                policy[s.index()] = Some(c);
            }
            None => unreachable.push(s),
        }
    }
    let residual = bellman_residual(tables, z, g, &values);
    Ok(ValueSolution {
        goal: g,
        values,
        policy,
        residual,
        iterations,
        unreachable,
    })
}

/// `max_s |V(s) − max_{z ∈ Z ∪ {g}} (−D(s,z) − C(s,z) + V(z))|` over states
/// with finite value, including the self-candidate `z = s`.
pub fn bellman_residual(tables: &CostTables, z: &SubgoalSet, g: StateId, values: &[f64]) -> f64 {
    let cands = candidates(tables, z, g);
    let mut worst: f64 = 0.0;
    for (s, &v) in values.iter().enumerate() {
        let s = StateId::new(s);
        if s == g || !v.is_finite() {
            continue;
        }
        let best = cands
            .iter()
            .map(|&c| tables.step_value(s, c) + values[c.index()])
            .fold(f64::NEG_INFINITY, f64::max);
        worst = worst.max((v - best).abs());
    }
    worst
}

/// `Σ p(s, g) · V_Z^g(s)`, one value iteration per distinct goal.
pub fn expected_value(
    tables: &CostTables,
    z: &SubgoalSet,
    tasks: &TaskDistribution,
    epsilon: f64,
) -> Result<f64, HplanError> {
    let mut total = 0.0;
    for (g, starts) in tasks.by_goal() {
        let sol = value_iteration(tables, z, g, epsilon)?;
        for (s, p) in starts {
            let v = sol.value(s);
            if !v.is_finite() {
                return Err(HplanError::Unreachable { start: s, goal: g });
            }
            total += p * v;
        }
    }
    Ok(total)
}
