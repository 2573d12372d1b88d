use alloc::vec::Vec;

use super::{candidate_pool, DecomposeError};
use crate::envs::{StateId, TaskDistribution};
use crate::hplan::{expected_value, SubgoalSet};
use crate::search::CostTables;

/// Softmax over single-subgoal values `u(z) = E[V_{z}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueProfile {
    pub states: Vec<StateId>,
    pub utilities: Vec<f64>,
    pub probabilities: Vec<f64>,
}

impl ValueProfile {
    /// Highest-probability state; ties go to the lower id.
    pub fn mode(&self) -> Option<StateId> {
        let mut best: Option<(StateId, f64)> = None;
        for (&s, &p) in self.states.iter().zip(&self.probabilities) {
            if best.is_none_or(|(_, bp)| p > bp) {
                best = Some((s, p));
            }
        }
        best.map(|(s, _)| s)
    }
}

pub fn subgoal_value_profile(
    tables: &CostTables,
    tasks: &TaskDistribution,
    beta: f64,
    epsilon: f64,
) -> Result<ValueProfile, DecomposeError> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(DecomposeError::Hyperparameter("beta must be positive"));
    }
    let states = candidate_pool(tables, tasks);
    let utilities = states
        .iter()
        .map(|&z| expected_value(tables, &SubgoalSet::new([z]), tasks, epsilon))
        .collect::<Result<Vec<_>, _>>()?;
    let probabilities = softmax(&utilities, beta);
    Ok(ValueProfile {
        states,
        utilities,
        probabilities,
    })
}

pub(crate) fn softmax(u: &[f64], beta: f64) -> Vec<f64> {
    let m = u.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = u.iter().map(|&x| libm::exp(beta * (x - m))).collect();
    let total: f64 = e.iter().sum();
    e.into_iter().map(|x| x / total).collect()
}

/// Members whose removal lowers the expected value by more than 1e-9.
pub fn used_subgoals(
    tables: &CostTables,
    tasks: &TaskDistribution,
    z: &SubgoalSet,
    epsilon: f64,
) -> Result<SubgoalSet, DecomposeError> {
    let full = expected_value(tables, z, tasks, epsilon)?;
    let mut used = Vec::new();
    for &m in z.members() {
        let without = expected_value(tables, &z.without(m), tasks, epsilon)?;
        if full - without > 1e-9 {
            used.push(m);
        }
    }
    Ok(SubgoalSet::new(used))
}
