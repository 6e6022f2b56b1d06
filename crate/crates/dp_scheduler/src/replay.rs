use num_traits::Zero;
use pwl_core::Rat;
use thiserror::Error;

use crate::dp::{Solution, TieBreak};
use crate::state::SchedState;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("class {class} has no jobs left in state {state}")]
    ExhaustedClass { class: usize, state: String },
    #[error("no decision remains at terminal state {0}")]
    TerminalState(String),
    #[error("state {0} is not part of this solution")]
    UnknownState(String),
    #[error("{got} perturbations given but the schedule has {max} jobs")]
    TooManyPerturbations { got: usize, max: usize },
    #[error("perturbation {index} is negative")]
    NegativeDelay { index: usize },
}

/// One executed decision in a forward run of the strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayStep {
    pub state: SchedState,
    pub decision_time: Rat,
    pub class: usize,
    /// 1-based position of the job within its class.
    pub job_index: usize,
    pub processing_time: Rat,
    pub delay: Rat,
    pub completion: Rat,
    pub step_cost: Rat,
}

/// A complete forward run: every decision plus the realized total cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replay {
    pub steps: Vec<ReplayStep>,
    pub total_cost: Rat,
}

impl Solution {
    /// The decision the strategy takes at `state` when the machine frees up at
    /// `t`: the class to run next and the processing time to grant.
    pub fn eval_strategy(
        &self,
        state: &SchedState,
        t: &Rat,
        tie: TieBreak,
    ) -> Result<(usize, Rat), StrategyError> {
        let sol = self
            .state(state)
            .ok_or_else(|| StrategyError::UnknownState(state.to_string()))?;
        if sol.is_terminal() {
            return Err(StrategyError::TerminalState(state.to_string()));
        }
        let set = &sol
            .winner_sets()
            .iter()
            .find(|(span, _)| span.contains(t))
            .expect("winner spans tile the axis")
            .1;
        let class = match tie {
            TieBreak::LowestClass => set[0],
            TieBreak::HighestClass => set[set.len() - 1],
        };
        let pt = sol.per_class[class - 1]
            .as_ref()
            .expect("winning class is available")
            .pt_policy
            .eval(t);
        Ok((class, pt))
    }

    /// Runs the strategy forward from decision instant `t0`, adding
    /// `delays[i]` to the completion of the `i`-th job run (missing entries
    /// are zero). With no delays the realized cost equals the root cost-to-go
    /// evaluated at `t0` exactly.
    pub fn replay(
        &self,
        t0: &Rat,
        delays: &[Rat],
        tie: TieBreak,
    ) -> Result<Replay, StrategyError> {
        let inst = self.instance();
        let total_jobs = inst.total_jobs();
        if delays.len() > total_jobs {
            return Err(StrategyError::TooManyPerturbations {
                got: delays.len(),
                max: total_jobs,
            });
        }
        if let Some(index) = delays.iter().position(|d| *d < Rat::zero()) {
            return Err(StrategyError::NegativeDelay { index });
        }
        let mut state = SchedState::initial(inst);
        let mut t = t0.clone();
        let mut total_cost = Rat::zero();
        let mut steps = Vec::with_capacity(total_jobs);
        for i in 0..total_jobs {
            let (class, pt) = self.eval_strategy(&state, &t, tie)?;
            let spec = &inst.classes()[class - 1];
            let job = &spec.jobs[state.completed[class - 1]];
            let setup_time = inst.setup_time(state.last_class, class);
            let setup_cost = inst.setup_cost(state.last_class, class);
            let delay = delays.get(i).cloned().unwrap_or_else(Rat::zero);
            let completion = &t + setup_time + &pt + &delay;
            let overrun = &completion - &job.due_date;
            let tardiness = if overrun > Rat::zero() {
                &job.alpha * overrun
            } else {
                Rat::zero()
            };
            let step_cost = setup_cost + &spec.beta * (&spec.pt_nom - &pt) + tardiness;
            total_cost += &step_cost;
            steps.push(ReplayStep {
                state: state.clone(),
                decision_time: t.clone(),
                class,
                job_index: state.completed[class - 1] + 1,
                processing_time: pt,
                delay,
                completion: completion.clone(),
                step_cost,
            });
            state = state.advance(class, inst);
            t = completion;
        }
        Ok(Replay { steps, total_cost })
    }
}
