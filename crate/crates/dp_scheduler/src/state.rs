use std::fmt;

use crate::ProblemInstance;

/// Progress marker: jobs completed per class, plus the class that ran last.
///
/// `last_class` is 0 before anything has run. On setup-free instances the
/// previous class cannot influence any later cost, so states collapse onto
/// `last_class == 0` throughout and the space shrinks accordingly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SchedState {
    pub completed: Vec<usize>,
    pub last_class: usize,
}

impl SchedState {
    pub fn initial(inst: &ProblemInstance) -> Self {
        SchedState {
            completed: vec![0; inst.class_count()],
            last_class: 0,
        }
    }

    /// Number of jobs already completed.
    pub fn stage(&self) -> usize {
        self.completed.iter().sum()
    }

    pub fn is_terminal(&self, inst: &ProblemInstance) -> bool {
        self.completed
            .iter()
            .zip(inst.classes())
            .all(|(done, class)| *done == class.jobs.len())
    }

    /// Successor after running one more job of `class` (1-based).
    pub fn advance(&self, class: usize, inst: &ProblemInstance) -> Self {
        let mut completed = self.completed.clone();
        completed[class - 1] += 1;
        let last_class = if inst.is_setup_free() { 0 } else { class };
        SchedState {
            completed,
            last_class,
        }
    }
}

impl fmt::Display for SchedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for done in &self.completed {
            write!(f, "{done} ")?;
        }
        write!(f, "{}]", self.last_class)
    }
}

/// Every reachable state, ordered by stage, then completion counts
/// lexicographically descending, then last class ascending.
///
/// The ordering puts each state strictly before all of its successors, so a
/// single reverse pass visits the space in valid backward-induction order.
pub fn state_space(inst: &ProblemInstance) -> Vec<SchedState> {
    let counts: Vec<usize> = inst.classes().iter().map(|c| c.jobs.len()).collect();
    let collapsed = inst.is_setup_free();
    let mut states = Vec::new();
    let mut completed = vec![0usize; counts.len()];
    loop {
        if completed.iter().all(|d| *d == 0) || collapsed {
            states.push(SchedState {
                completed: completed.clone(),
                last_class: 0,
            });
        } else {
            for class in 1..=counts.len() {
                if completed[class - 1] > 0 {
                    states.push(SchedState {
                        completed: completed.clone(),
                        last_class: class,
                    });
                }
            }
        }
        let mut digit = 0;
        loop {
            if digit == completed.len() {
                states.sort_by(|a, b| {
                    a.stage()
                        .cmp(&b.stage())
                        .then_with(|| b.completed.cmp(&a.completed))
                        .then_with(|| a.last_class.cmp(&b.last_class))
                });
                return states;
            }
            if completed[digit] < counts[digit] {
                completed[digit] += 1;
                break;
            }
            completed[digit] = 0;
            digit += 1;
        }
    }
}
