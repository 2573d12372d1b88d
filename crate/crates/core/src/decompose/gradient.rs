use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{candidate_pool, DecomposeError, DecompositionResult, Method, RankedSet};
use crate::envs::TaskDistribution;
use crate::hplan::{expected_value, soft_expected_value, SubgoalSet};
use crate::search::CostTables;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientParams {
    pub steps: usize,
    pub step_size: f64,
    pub initial_temperature: f64,
    pub final_temperature: f64,
    /// Half-width of the uniform jitter added to the initial logits.
    pub jitter: f64,
    pub seed: u64,
    /// Tolerance for the inner soft value iterations.
    pub soft_epsilon: f64,
}

impl Default for GradientParams {
    fn default() -> Self {
        GradientParams {
            steps: 500,
            step_size: 0.1,
            initial_temperature: 1.0,
            final_temperature: 0.01,
            jitter: 1e-3,
            seed: 0,
            soft_epsilon: 1e-9,
        }
    }
}

/// Relaxed solution of the gradient method.
#[derive(Debug, Clone, PartialEq)]
pub struct InclusionProfile {
    /// Per-state inclusion probability; zero outside the candidate pool.
    pub probabilities: Vec<f64>,
    pub temperature_history: Vec<f64>,
    pub objective_history: Vec<f64>,
}

/// Gradient ascent on the soft expected value.
///
/// Logits `θ` over the candidate pool give a subgoal distribution
/// `p = softmax(θ)`; a state's inclusion weight is the chance it shows up in
/// `k` independent draws, `w = 1 − (1 − p)^k`. The temperature anneals
/// geometrically. The final set is the top-`k` states by weight, scored with
/// the hard solver.
pub fn gradient_decomposition(
    tables: &CostTables,
    tasks: &TaskDistribution,
    k: usize,
    params: &GradientParams,
    epsilon: f64,
) -> Result<(DecompositionResult, InclusionProfile), DecomposeError> {
    validate(params)?;
    let n = tables.n_states();
    let pool = candidate_pool(tables, tasks);
    let k = k.min(pool.len());
    let baseline = expected_value(tables, &SubgoalSet::empty(), tasks, epsilon)?;

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut theta: Vec<f64> = pool
        .iter()
        .map(|_| rng.random_range(-1.0..=1.0) * params.jitter)
        .collect();
    let kf = k as f64;
    let mut weights = vec![0.0; n];
    let mut probs = vec![0.0; pool.len()];
    let mut temperature_history = Vec::with_capacity(params.steps);
    let mut objective_history = Vec::with_capacity(params.steps);

    let fill = |theta: &[f64], probs: &mut [f64], weights: &mut [f64]| {
        let m = theta.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut total = 0.0;
        for (p, &t) in probs.iter_mut().zip(theta) {
            *p = libm::exp(t - m);
            total += *p;
        }
        for (i, p) in probs.iter_mut().enumerate() {
            *p /= total;
            weights[pool[i].index()] = 1.0 - libm::pow(1.0 - *p, kf);
        }
    };

    if k > 0 {
        let ratio = params.final_temperature / params.initial_temperature;
        for step in 0..params.steps {
            let frac = if params.steps > 1 {
                step as f64 / (params.steps - 1) as f64
            } else {
                0.0
            };
            let tau = params.initial_temperature * libm::pow(ratio, frac);
            fill(&theta, &mut probs, &mut weights);
            let obj = soft_expected_value(tables, &weights, tasks, tau, params.soft_epsilon)?;
            if !obj.value.is_finite() || obj.gradient.iter().any(|g| !g.is_finite()) {
                return Err(DecomposeError::Instability(step));
            }
            temperature_history.push(tau);
            objective_history.push(obj.value);
            // chain rule through w(p) and the softmax
            let a: Vec<f64> = pool
                .iter()
                .zip(&probs)
                .map(|(z, &p)| obj.gradient[z.index()] * kf * libm::pow(1.0 - p, kf - 1.0))
                .collect();
            let mean: f64 = a.iter().zip(&probs).map(|(a, p)| a * p).sum();
            for ((t, &p), &ai) in theta.iter_mut().zip(&probs).zip(&a) {
                *t += params.step_size * p * (ai - mean);
            }
        }
        fill(&theta, &mut probs, &mut weights);
    }

    let mut order: Vec<usize> = (0..pool.len()).collect();
    order.sort_by(|&i, &j| probs[j].total_cmp(&probs[i]).then(i.cmp(&j)));
    let set = SubgoalSet::new(order.iter().take(k).map(|&i| pool[i]));
    let value = expected_value(tables, &set, tasks, epsilon)?;
    let result = DecompositionResult {
        method: Method::Gradient,
        k,
        ranked: vec![RankedSet { set, value }],
        baseline,
    };
    let profile = InclusionProfile {
        probabilities: weights,
        temperature_history,
        objective_history,
    };
    Ok((result, profile))
}

fn validate(p: &GradientParams) -> Result<(), DecomposeError> {
    let positive = |x: f64| x > 0.0 && x.is_finite();
    if p.steps == 0 {
        return Err(DecomposeError::Hyperparameter("steps must be positive"));
    }
    if !positive(p.step_size) {
        return Err(DecomposeError::Hyperparameter("step_size must be positive"));
    }
    if !positive(p.initial_temperature) || !positive(p.final_temperature) {
        return Err(DecomposeError::Hyperparameter(
            "temperatures must be positive",
        ));
    }
    if !(p.jitter.is_finite() && p.jitter >= 0.0) {
        return Err(DecomposeError::Hyperparameter(
            "jitter must be non-negative",
        ));
    }
    if !positive(p.soft_epsilon) {
        return Err(DecomposeError::Hyperparameter(
            "soft_epsilon must be positive",
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::enumerate_decompositions;
    use crate::envs::{build_grid, uniform_tasks};
    use crate::search::{all_pairs_tables, CostConfig};

    #[test]
    fn line_matches_enumeration() {
        let g = build_grid("...").unwrap();
        let t = all_pairs_tables(&g, &CostConfig::bfs()).unwrap();
        let tasks = uniform_tasks(&g, None).unwrap();
        let e = enumerate_decompositions(&t, &tasks, 1, 1e-5).unwrap();
        let (r, prof) =
            gradient_decomposition(&t, &tasks, 1, &GradientParams::default(), 1e-5).unwrap();
        assert!((r.optimum().value - e.optimum().value).abs() < 1e-6);
        assert!(prof.probabilities.iter().all(|p| (0.0..=1.0).contains(p)));
        assert_eq!(prof.temperature_history.len(), 500);
        assert!((prof.temperature_history[499] - 0.01).abs() < 1e-12);
    }

    #[test]
    fn seeded_runs_are_identical() {
        let g = build_grid("....\n.#..").unwrap();
        let t = all_pairs_tables(&g, &CostConfig::bfs()).unwrap();
        let tasks = uniform_tasks(&g, None).unwrap();
        let p = GradientParams {
            steps: 40,
            ..GradientParams::default()
        };
        let a = gradient_decomposition(&t, &tasks, 1, &p, 1e-5).unwrap();
        let b = gradient_decomposition(&t, &tasks, 1, &p, 1e-5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_hyperparameters() {
        let g = build_grid("...").unwrap();
        let t = all_pairs_tables(&g, &CostConfig::bfs()).unwrap();
        let tasks = uniform_tasks(&g, None).unwrap();
        let p = GradientParams {
            step_size: 0.0,
            ..GradientParams::default()
        };
        assert!(gradient_decomposition(&t, &tasks, 1, &p, 1e-5).is_err());
    }
}
