use alloc::vec;
use alloc::vec::Vec;

use super::{HplanError, MAX_SWEEPS};
use crate::envs::{StateId, TaskDistribution};
use crate::search::CostTables;

/// Smoothed value function for one goal.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftSolution {
    pub goal: StateId,
    pub values: Vec<f64>,
    pub iterations: usize,
}

/// Soft expected value and its gradient with respect to the inclusion weights.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftObjective {
    pub value: f64,
    pub gradient: Vec<f64>,
}

fn check_inputs(
    tables: &CostTables,
    weights: &[f64],
    temperature: f64,
    epsilon: f64,
) -> Result<(), HplanError> {
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(HplanError::Temperature(temperature));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(HplanError::Epsilon(epsilon));
    }
    if weights.len() != tables.n_states() || weights.iter().any(|w| !(0.0..=1.0).contains(w)) {
        return Err(HplanError::Weights);
    }
    Ok(())
}

#[inline]
fn weight(weights: &[f64], z: usize, g: StateId) -> f64 {
    if z == g.index() {
        1.0
    } else {
        weights[z]
    }
}

/// `V(s) = τ · ln Σ_z w_z · exp((−D(s,z) − C(s,z) + V(z)) / τ)` over
/// candidates `z ≠ s` that are reachable from `s` and reach `g`, with
/// `w_g = 1`, `V(g) = 0`. Zero-weight candidates drop out.
pub fn soft_value_iteration(
    tables: &CostTables,
    weights: &[f64],
    g: StateId,
    temperature: f64,
    epsilon: f64,
) -> Result<SoftSolution, HplanError> {
    check_inputs(tables, weights, temperature, epsilon)?;
    let n = tables.n_states();
    if g.index() >= n {
        return Err(HplanError::UnknownState(g));
    }
    let live: Vec<bool> = (0..n)
        .map(|z| weight(weights, z, g) > 0.0 && tables.reachable(StateId::new(z), g))
        .collect();
    let log_w: Vec<f64> = (0..n).map(|z| libm::log(weight(weights, z, g))).collect();
    let mut v: Vec<f64> = vec![0.0; n];
    let mut next = vec![0.0; n];
    let mut terms = Vec::with_capacity(n);
    let mut iterations = 0;
    loop {
        if iterations >= MAX_SWEEPS {
            return Err(HplanError::Diverged(iterations));
        }
        iterations += 1;
        let mut diff: f64 = 0.0;
        for s in 0..n {
            if s == g.index() {
                next[s] = 0.0;
                continue;
            }
            terms.clear();
            for z in 0..n {
                if z != s && live[z] {
                    let q = tables.step_value(StateId::new(s), StateId::new(z));
                    if q.is_finite() && v[z].is_finite() {
                        terms.push(log_w[z] + (q + v[z]) / temperature);
                    }
                }
            }
            next[s] = temperature * log_sum_exp(&terms);
            if next[s].is_finite() && v[s].is_finite() {
                diff = diff.max((next[s] - v[s]).abs());
            } else if next[s].is_finite() != v[s].is_finite() && iterations > 1 {
                diff = f64::INFINITY;
            }
        }
        core::mem::swap(&mut v, &mut next);
        if diff < epsilon {
            break;
        }
    }
    Ok(SoftSolution {
        goal: g,
        values: v,
        iterations,
    })
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    let s: f64 = terms.iter().map(|t| libm::exp(t - m)).sum();
    m + libm::log(s)
}

/// Task-weighted soft value and its exact gradient.
///
/// Differentiating the fixed point gives
/// `∂J/∂w_z = τ Σ_s μ(s) · exp((q(s,z) + V(z) − V(s)) / τ)` where `μ` is the
/// expected visit count under the softmax subgoal choice, `μ = ρ + μΠ`.
pub fn soft_expected_value(
    tables: &CostTables,
    weights: &[f64],
    tasks: &TaskDistribution,
    temperature: f64,
    epsilon: f64,
) -> Result<SoftObjective, HplanError> {
    check_inputs(tables, weights, temperature, epsilon)?;
    let n = tables.n_states();
    let mut value = 0.0;
    let mut gradient = vec![0.0; n];
    for (g, starts) in tasks.by_goal() {
        let sol = soft_value_iteration(tables, weights, g, temperature, epsilon)?;
        let v = &sol.values;
        let mut rho = vec![0.0; n];
        for &(s, p) in &starts {
            if !v[s.index()].is_finite() {
                return Err(HplanError::Unreachable { start: s, goal: g });
            }
            value += p * v[s.index()];
            rho[s.index()] += p;
        }
        // kappa[s][z] = π(z|s) / w_z
        let mut kappa = vec![0.0; n * n];
        for s in 0..n {
            if s == g.index() || !v[s].is_finite() {
                continue;
            }
            for z in 0..n {
                if z == s || !v[z].is_finite() {
                    continue;
                }
                let q = tables.step_value(StateId::new(s), StateId::new(z));
                if q.is_finite() && tables.reachable(StateId::new(z), g) {
                    kappa[s * n + z] = libm::exp((q + v[z] - v[s]) / temperature);
                }
            }
        }
        // (I − Π)ᵀ μ = ρ
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = 1.0;
        }
        for s in 0..n {
            for z in 0..n {
                let pi = weight(weights, z, g) * kappa[s * n + z];
                a[z * n + s] -= pi;
            }
        }
        let mu = solve_dense(a, rho, n);
        for z in 0..n {
            if z == g.index() {
                continue;
            }
            let mut acc = 0.0;
            for s in 0..n {
                acc += mu[s] * kappa[s * n + z];
            }
            gradient[z] += temperature * acc;
        }
    }
    Ok(SoftObjective { value, gradient })
}

/// Gaussian elimination with partial pivoting on a row-major `n × n` system.
fn solve_dense(mut a: Vec<f64>, mut b: Vec<f64>, n: usize) -> Vec<f64> {
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
            .unwrap_or(col);
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            b.swap(col, pivot);
        }
        let d = a[col * n + col];
        if d == 0.0 {
            continue;
        }
        for row in col + 1..n {
            let f = a[row * n + col] / d;
            if f != 0.0 {
                for k in col..n {
                    a[row * n + k] -= f * a[col * n + k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row * n + k] * x[k];
        }
        let d = a[row * n + row];
        x[row] = if d == 0.0 { 0.0 } else { acc / d };
    }
    x
}
