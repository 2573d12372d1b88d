use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::ExperimentError;
use crate::envs::{StateId, TransitionGraph};
use crate::hplan::{extract_plan, value_iteration, HierarchicalPlan, SubgoalSet, ValueSolution};
use crate::search::CostTables;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Answer {
    Affirm,
    Reject,
}

/// "Is `probe` on the best route from `start` to `goal`?"
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeTrial {
    pub start: StateId,
    pub goal: StateId,
    pub probe: StateId,
    /// Whether the probe lies on the action-level path. A subgoal probe can
    /// be on it yet rejected when the subtask plan passes it by.
    pub probe_on_path: bool,
    pub probe_is_bottleneck: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeOutcome {
    pub answer: Answer,
    /// Subgoals plus action-level states simulated before answering.
    pub steps: usize,
}

/// Answers a probe from an already built plan.
///
/// The subtask plan is laid out first. A probe that is a subgoal (a member
/// of `Z` or the goal) is settled there: affirm at its position in the
/// sequence, or reject once the whole sequence has been enumerated. Any other
/// probe is looked for along the action-level path, segment by segment,
/// counting each state once (the start included, segment joins once).
pub fn probe_outcome(plan: &HierarchicalPlan, z: &SubgoalSet, probe: StateId) -> ProbeOutcome {
    let subtask_steps = plan.subgoal_sequence.len();
    if z.contains(probe) || probe == plan.goal {
        return match plan.subgoal_sequence.iter().position(|&s| s == probe) {
            Some(i) => ProbeOutcome {
                answer: Answer::Affirm,
                steps: i + 1,
            },
            None => ProbeOutcome {
                answer: Answer::Reject,
                steps: subtask_steps.max(1),
            },
        };
    }
    match plan.full_path.iter().position(|&s| s == probe) {
        Some(i) => ProbeOutcome {
            answer: Answer::Affirm,
            steps: subtask_steps + i + 1,
        },
        None => ProbeOutcome {
            answer: Answer::Reject,
            steps: subtask_steps + plan.full_path.len(),
        },
    }
}

pub fn simulate_probe(
    tables: &CostTables,
    graph: &TransitionGraph,
    z: &SubgoalSet,
    trial: &ProbeTrial,
    epsilon: f64,
) -> Result<ProbeOutcome, ExperimentError> {
    if trial.start == trial.goal {
        return Err(ExperimentError::InvalidTrial("start equals goal"));
    }
    let sol = value_iteration(tables, z, trial.goal, epsilon)?;
    let plan = extract_plan(&sol, tables, graph, trial.start)?;
    Ok(probe_outcome(&plan, z, trial.probe))
}

/// Mean response steps for one (answer, bottleneck) cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeCell {
    pub answer: Answer,
    pub bottleneck: bool,
    pub trials: usize,
    pub mean_steps: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeBattery {
    /// Affirm/bottleneck, affirm/other, reject/bottleneck, reject/other.
    pub cells: Vec<ProbeCell>,
    pub outcomes: Vec<(ProbeTrial, ProbeOutcome)>,
    /// Ordered pairs skipped because the goal is unreachable.
    pub skipped: usize,
}

impl ProbeBattery {
    pub fn cell(&self, answer: Answer, bottleneck: bool) -> &ProbeCell {
        self.cells
            .iter()
            .find(|c| c.answer == answer && c.bottleneck == bottleneck)
            .expect("all four cells are present")
    }

    /// True when every cell has at least one trial.
    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(|c| c.trials > 0)
    }
}

/// Every `(start, goal, probe)` with `start ≠ goal` and the probe distinct
/// from both, binned by answer and by the probe's bottleneck label.
pub fn run_probe_battery(
    tables: &CostTables,
    graph: &TransitionGraph,
    z: &SubgoalSet,
    epsilon: f64,
) -> Result<ProbeBattery, ExperimentError> {
    let mut outcomes = Vec::new();
    let mut skipped = 0;
    let mut sums: BTreeMap<(Answer, bool), (usize, usize)> = BTreeMap::new();
    for goal in graph.states() {
        let sol: ValueSolution = value_iteration(tables, z, goal, epsilon)?;
        for start in graph.states() {
            if start == goal {
                continue;
            }
            if !sol.value(start).is_finite() {
                skipped += 1;
                continue;
            }
            let plan = extract_plan(&sol, tables, graph, start)?;
            for probe in graph.states() {
                if probe == start || probe == goal {
                    continue;
                }
                let outcome = probe_outcome(&plan, z, probe);
                let trial = ProbeTrial {
                    start,
                    goal,
                    probe,
                    probe_on_path: plan.full_path.contains(&probe),
                    probe_is_bottleneck: graph.is_bottleneck(probe),
                };
                let e = sums
                    .entry((outcome.answer, trial.probe_is_bottleneck))
                    .or_insert((0, 0));
                e.0 += 1;
                e.1 += outcome.steps;
                outcomes.push((trial, outcome));
            }
        }
    }
    let mut cells = Vec::with_capacity(4);
    for answer in [Answer::Affirm, Answer::Reject] {
        for bottleneck in [true, false] {
            let (trials, total) = sums.get(&(answer, bottleneck)).copied().unwrap_or((0, 0));
            cells.push(ProbeCell {
                answer,
                bottleneck,
                trials,
                mean_steps: if trials == 0 {
                    f64::NAN
                } else {
                    total as f64 / trials as f64
                },
            });
        }
    }
    Ok(ProbeBattery {
        cells,
        outcomes,
        skipped,
    })
}
