use std::collections::HashMap;

use argmin_engine::{solve_window, ArgminPolicy, Segment};
use num_traits::{One, Zero};
use pwl_core::{DeviationCost, PwlFunction, Rat, Span, Winner};

use crate::replay::StrategyError;
use crate::state::{state_space, SchedState};
use crate::ProblemInstance;

/// How to resolve an instant where several classes are equally good.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    LowestClass,
    HighestClass,
}

/// Cost-to-go and processing-time rule at one state, conditioned on committing
/// to a given class next.
#[derive(Debug, Clone)]
pub struct ClassConditioned {
    pub cost_to_go: PwlFunction,
    pub pt_policy: ArgminPolicy,
}

/// Everything the solver knows about one state: the exact cost-to-go, the
/// spans on which each subset of classes attains it, and the conditioned
/// policies the spans select from.
#[derive(Debug, Clone)]
pub struct StateSolution {
    pub state: SchedState,
    pub cost_to_go: PwlFunction,
    winner_sets: Vec<(Span, Vec<usize>)>,
    pub per_class: Vec<Option<ClassConditioned>>,
}

impl StateSolution {
    pub fn is_terminal(&self) -> bool {
        self.per_class.iter().all(Option::is_none)
    }

    /// Spans tiling the axis, each with the 1-based classes (ascending) whose
    /// conditioned cost-to-go equals the minimum there. Empty at terminals.
    pub fn winner_sets(&self) -> &[(Span, Vec<usize>)] {
        &self.winner_sets
    }

    /// Spans where at least two classes tie exactly.
    pub fn tie_intervals(&self) -> Vec<(Span, Vec<usize>)> {
        self.winner_sets
            .iter()
            .filter(|(_, set)| set.len() >= 2)
            .cloned()
            .collect()
    }

    /// Class choice as a function of the decision instant, ties resolved.
    pub fn class_strategy(&self, tie: TieBreak) -> Vec<(Span, usize)> {
        let mut out: Vec<(Span, usize)> = Vec::new();
        for (span, set) in &self.winner_sets {
            let class = match tie {
                TieBreak::LowestClass => set[0],
                TieBreak::HighestClass => set[set.len() - 1],
            };
            match out.last_mut() {
                Some((prev, c)) if *c == class => prev.end = span.end.clone(),
                _ => out.push((span.clone(), class)),
            }
        }
        out
    }

    /// Granted processing time as a function of the decision instant: the
    /// chosen class's rule, clipped to the spans where that class is chosen.
    pub fn pt_strategy(&self, tie: TieBreak) -> Vec<(Span, Segment)> {
        let mut out: Vec<(Span, Segment)> = Vec::new();
        for (span, class) in self.class_strategy(tie) {
            let policy = self.per_class[class - 1]
                .as_ref()
                .expect("chosen class is available");
            for (piece, seg) in policy.pt_policy.pieces() {
                let clipped = piece.intersect(&span);
                if clipped.is_empty() {
                    continue;
                }
                match out.last_mut() {
                    Some((prev, s)) if s == seg && prev.end == clipped.start => {
                        prev.end = clipped.end;
                    }
                    _ => out.push((clipped, seg.clone())),
                }
            }
        }
        out
    }
}

/// A solved instance: one [`StateSolution`] per reachable state, in backward
/// sweep order (initial state first).
#[derive(Debug, Clone)]
pub struct Solution {
    instance: ProblemInstance,
    states: Vec<StateSolution>,
    index: HashMap<SchedState, usize>,
}

impl Solution {
    pub fn instance(&self) -> &ProblemInstance {
        &self.instance
    }

    pub fn states(&self) -> &[StateSolution] {
        &self.states
    }

    pub fn state(&self, state: &SchedState) -> Option<&StateSolution> {
        self.index.get(state).map(|i| &self.states[*i])
    }

    /// The empty-schedule state the whole problem starts from.
    pub fn root(&self) -> &StateSolution {
        &self.states[0]
    }
}

/// Cost of running the next job of `class` out of `state`, as a pair
/// `(f, g)`: `f` maps the job's completion time to setup cost plus tardiness
/// plus all cost-to-go downstream, and `g` charges the compression.
///
/// With decision instant `t` and granted time `x`, the step contributes
/// `f(t + x) + g(x)`, exactly the windowed form the argmin engine minimizes.
pub fn stage_cost(
    inst: &ProblemInstance,
    state: &SchedState,
    class: usize,
    next_cost: &PwlFunction,
) -> Result<(PwlFunction, DeviationCost), StrategyError> {
    let spec = &inst.classes()[class - 1];
    let done = state.completed[class - 1];
    if done >= spec.jobs.len() {
        return Err(StrategyError::ExhaustedClass {
            class,
            state: state.to_string(),
        });
    }
    let job = &spec.jobs[done];
    let setup_time = inst.setup_time(state.last_class, class);
    let setup_cost = inst.setup_cost(state.last_class, class);
    let tardiness = PwlFunction::ramp(&job.due_date - setup_time, job.alpha.clone())
        .expect("positive tardiness weight");
    let f = tardiness
        .sum(&next_cost.shift(setup_time))
        .add_constant(setup_cost);
    let g = DeviationCost::new(spec.pt_low.clone(), spec.pt_nom.clone(), spec.beta.clone())
        .expect("validated processing window");
    Ok((f, g))
}

/// Solves the whole instance by one backward sweep.
///
/// Terminal states cost zero everywhere. Every earlier state conditions on
/// each class with jobs remaining, solves the windowed argmin in closed form,
/// and takes the pointwise minimum across classes, keeping the exact spans on
/// which each subset of classes attains it.
pub fn solve(inst: &ProblemInstance) -> Solution {
    let order = state_space(inst);
    let index: HashMap<SchedState, usize> = order
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let mut states: Vec<Option<StateSolution>> = vec![None; order.len()];
    for i in (0..order.len()).rev() {
        let state = &order[i];
        let mut per_class: Vec<Option<ClassConditioned>> = vec![None; inst.class_count()];
        for class in 1..=inst.class_count() {
            if state.completed[class - 1] >= inst.classes()[class - 1].jobs.len() {
                continue;
            }
            let next = state.advance(class, inst);
            let next_cost = &states[index[&next]]
                .as_ref()
                .expect("successor already solved")
                .cost_to_go;
            let (f, g) = stage_cost(inst, state, class, next_cost).expect("class has jobs left");
            let (pt_policy, cost_to_go) = solve_window(&f, &g);
            per_class[class - 1] = Some(ClassConditioned {
                cost_to_go,
                pt_policy,
            });
        }
        let mut available = per_class
            .iter()
            .enumerate()
            .filter_map(|(c, cond)| cond.as_ref().map(|cc| (c + 1, cc)));
        let (cost_to_go, winner_sets) = match available.next() {
            None => (PwlFunction::zero(), Vec::new()),
            Some((first_class, first)) => {
                let mut cost = first.cost_to_go.clone();
                let mut sets = vec![(Span::all(), vec![first_class])];
                for (class, cond) in available {
                    let min = cost.min_of(&cond.cost_to_go);
                    sets = overlay(&sets, &min.winners, class);
                    cost = min.func;
                }
                (cost, sets)
            }
        };
        states[i] = Some(StateSolution {
            state: state.clone(),
            cost_to_go,
            winner_sets,
            per_class,
        });
    }
    Solution {
        instance: inst.clone(),
        states: states.into_iter().map(Option::unwrap).collect(),
        index,
    }
}

/// Refines accumulated winner sets by one pairwise-minimum outcome: where the
/// running minimum stays ahead the set is kept, where `class` wins it replaces
/// the set, and on exact ties `class` joins it.
fn overlay(
    sets: &[(Span, Vec<usize>)],
    winners: &[(Span, Winner)],
    class: usize,
) -> Vec<(Span, Vec<usize>)> {
    let mut bounds: Vec<Rat> = sets
        .iter()
        .map(|(span, _)| span)
        .chain(winners.iter().map(|(span, _)| span))
        .filter_map(|span| span.start.clone())
        .collect();
    bounds.sort();
    bounds.dedup();
    let at = |t: &Rat| {
        let set = &sets.iter().find(|(s, _)| s.contains(t)).expect("tiling").1;
        let win = winners.iter().find(|(s, _)| s.contains(t)).expect("tiling").1;
        match win {
            Winner::First => set.to_vec(),
            Winner::Second => vec![class],
            Winner::Tie => {
                let mut joined = set.to_vec();
                joined.push(class);
                joined.sort();
                joined
            }
        }
    };
    let mut out: Vec<(Span, Vec<usize>)> = Vec::new();
    let mut push = |span: Span, set: Vec<usize>| match out.last_mut() {
        Some((prev, s)) if *s == set => prev.end = span.end.clone(),
        _ => out.push((span, set)),
    };
    let mut cursor: Option<Rat> = None;
    for b in &bounds {
        let rep = cursor.clone().unwrap_or_else(|| b - Rat::one());
        push(Span::new(cursor.clone(), Some(b.clone())), at(&rep));
        cursor = Some(b.clone());
    }
    let rep = cursor.clone().unwrap_or_else(Rat::zero);
    push(Span::new(cursor, None), at(&rep));
    out
}
