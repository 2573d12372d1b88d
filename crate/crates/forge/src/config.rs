//! Run configuration: a `key = value` text format, command-line overrides
//! and the echo written next to every report.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use subgoal_forge_core::decompose::{GradientParams, Method};
use subgoal_forge_core::hplan::DEFAULT_EPSILON;
use subgoal_forge_core::{Algorithm, CostConfig, Heuristic, TieBreak};

use crate::UsageError;

/// Every key the config format understands, in echo order.
pub const KEYS: &[&str] = &[
    "env",
    "algorithm",
    "heuristic",
    "tie_break",
    "samples",
    "seed",
    "k",
    "method",
    "epsilon",
    "cost_weight",
    "beta",
    "steps",
    "step_size",
    "initial_temperature",
    "final_temperature",
    "jitter",
    "support",
    "subgoals",
    "output",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub env: Option<String>,
    pub algorithm: Algorithm,
    pub heuristic: Heuristic,
    /// `true` for averaged tie-breaking, `false` for ascending id.
    pub averaged: bool,
    pub samples: u32,
    pub seed: u64,
    pub k: usize,
    pub method: Method,
    pub epsilon: f64,
    pub cost_weight: f64,
    pub beta: f64,
    pub steps: usize,
    pub step_size: f64,
    pub initial_temperature: f64,
    pub final_temperature: f64,
    pub jitter: f64,
    pub support: Option<Vec<String>>,
    pub subgoals: Option<Vec<String>>,
    pub output: PathBuf,
    set: BTreeSet<&'static str>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let g = GradientParams::default();
        RunConfig {
            env: None,
            algorithm: Algorithm::Bfs,
            heuristic: Heuristic::Zero,
            averaged: true,
            samples: 64,
            seed: 0,
            k: 1,
            method: Method::Enumeration,
            epsilon: DEFAULT_EPSILON,
            cost_weight: 1.0,
            beta: 100.0,
            steps: g.steps,
            step_size: g.step_size,
            initial_temperature: g.initial_temperature,
            final_temperature: g.final_temperature,
            jitter: g.jitter,
            support: None,
            subgoals: None,
            output: PathBuf::from("runs"),
            set: BTreeSet::new(),
        }
    }
}

fn positive(key: &str, value: &str) -> Result<f64, UsageError> {
    match value.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(UsageError::new(format!(
            "{key}: expected a positive number, got `{value}`"
        ))),
    }
}

fn nonneg(key: &str, value: &str) -> Result<f64, UsageError> {
    match value.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.is_finite() => Ok(v),
        _ => Err(UsageError::new(format!(
            "{key}: expected a non-negative number, got `{value}`"
        ))),
    }
}

fn integer<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, UsageError> {
    value.parse().map_err(|_| {
        UsageError::new(format!(
            "{key}: expected a non-negative integer, got `{value}`"
        ))
    })
}

fn list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

impl RunConfig {
    /// Sets one field from its text form.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), UsageError> {
        let value = value.trim();
        let key: &'static str = KEYS
            .iter()
            .copied()
            .find(|k| *k == key)
            .ok_or_else(|| UsageError::new(format!("unknown config key `{key}`")))?;
        match key {
            "env" => self.env = Some(value.to_string()),
            "algorithm" => {
                self.algorithm = Algorithm::parse(value).ok_or_else(|| {
                    UsageError::new(format!("algorithm: expected bfs or astar, got `{value}`"))
                })?
            }
            "heuristic" => {
                self.heuristic = Heuristic::parse(value).ok_or_else(|| {
                    UsageError::new(format!(
                        "heuristic: expected zero, manhattan or hanoi_edit, got `{value}`"
                    ))
                })?
            }
            "tie_break" => {
                self.averaged = match value {
                    "averaged" => true,
                    "by_id" => false,
                    _ => {
                        return Err(UsageError::new(format!(
                            "tie_break: expected averaged or by_id, got `{value}`"
                        )))
                    }
                }
            }
            "samples" => {
                self.samples = integer(key, value)?;
                if self.samples == 0 {
                    return Err(UsageError::new("samples: must be at least 1"));
                }
            }
            "seed" => self.seed = integer(key, value)?,
            "k" => self.k = integer(key, value)?,
            "method" => {
                self.method = match value {
                    "enumerate" => Method::Enumeration,
                    "gradient" => Method::Gradient,
                    _ => {
                        return Err(UsageError::new(format!(
                            "method: expected enumerate or gradient, got `{value}`"
                        )))
                    }
                }
            }
            "epsilon" => self.epsilon = positive(key, value)?,
            "cost_weight" => self.cost_weight = positive(key, value)?,
            "beta" => self.beta = positive(key, value)?,
            "steps" => self.steps = integer(key, value)?,
            "step_size" => self.step_size = positive(key, value)?,
            "initial_temperature" => self.initial_temperature = positive(key, value)?,
            "final_temperature" => self.final_temperature = positive(key, value)?,
            "jitter" => self.jitter = nonneg(key, value)?,
            "support" => self.support = Some(list(value)),
            "subgoals" => self.subgoals = Some(list(value)),
            "output" => self.output = PathBuf::from(value),
            _ => unreachable!("key list and match arms agree"),
        }
        self.set.insert(key);
        Ok(())
    }

    /// Applies a config file. Blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<(), UsageError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                UsageError::new(format!("config line {}: expected `key = value`", i + 1))
            })?;
            self.apply(key.trim(), value)
                .map_err(|e| UsageError::new(format!("config line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, UsageError> {
        let mut cfg = RunConfig::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    /// Whether `key` was set by a file or flag rather than left at default.
    pub fn is_set(&self, key: &str) -> bool {
        self.set.contains(key)
    }

    pub fn tie_break(&self) -> TieBreak {
        if self.averaged {
            TieBreak::Averaged {
                samples: self.samples,
                seed: self.seed,
            }
        } else {
            TieBreak::ById
        }
    }

    pub fn cost_config(&self) -> CostConfig {
        CostConfig {
            algorithm: self.algorithm,
            heuristic: self.heuristic,
            tie_break: self.tie_break(),
            cost_weight: self.cost_weight,
        }
    }

    pub fn gradient_params(&self) -> GradientParams {
        GradientParams {
            steps: self.steps,
            step_size: self.step_size,
            initial_temperature: self.initial_temperature,
            final_temperature: self.final_temperature,
            jitter: self.jitter,
            seed: self.seed,
            ..GradientParams::default()
        }
    }

    fn value_of(&self, key: &str) -> Option<String> {
        Some(match key {
            "env" => self.env.clone()?,
            "algorithm" => self.algorithm.name().to_string(),
            "heuristic" => self.heuristic.name().to_string(),
            "tie_break" => if self.averaged { "averaged" } else { "by_id" }.to_string(),
            "samples" => self.samples.to_string(),
            "seed" => self.seed.to_string(),
            "k" => self.k.to_string(),
            "method" => self.method.name().to_string(),
            "epsilon" => self.epsilon.to_string(),
            "cost_weight" => self.cost_weight.to_string(),
            "beta" => self.beta.to_string(),
            "steps" => self.steps.to_string(),
            "step_size" => self.step_size.to_string(),
            "initial_temperature" => self.initial_temperature.to_string(),
            "final_temperature" => self.final_temperature.to_string(),
            "jitter" => self.jitter.to_string(),
            "support" => self.support.as_ref()?.join(","),
            "subgoals" => self.subgoals.as_ref()?.join(","),
            "output" => self.output.display().to_string(),
            _ => return None,
        })
    }

    /// Every resolved field, skipping `omit`, preceded by asset digests as
    /// comments. Parsing the result gives back the same configuration.
    pub fn echo(&self, digests: &[(String, String)], omit: &[&str]) -> String {
        let mut out = String::from("# subgoal-forge run configuration\n");
        for (name, digest) in digests {
            let _ = writeln!(out, "# asset_sha256 {name} = {digest}");
        }
        for key in KEYS {
            if omit.contains(key) {
                continue;
            }
            if let Some(v) = self.value_of(key) {
                let _ = writeln!(out, "{key} = {v}");
            }
        }
        out
    }

    /// Field-by-field comparison, ignoring which keys were explicitly set.
    pub fn same_settings(&self, other: &RunConfig) -> bool {
        KEYS.iter().all(|k| self.value_of(k) == other.value_of(k))
    }
}
