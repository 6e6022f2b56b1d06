//! Backward dynamic program for single-machine scheduling with job classes,
//! compressible processing times, and sequence-dependent setups.
//!
//! Jobs are grouped into classes. Within a class, jobs share a processing-time
//! window and a compression rate, and are released in a fixed order against a
//! nondecreasing list of due dates. Switching between classes may incur a setup
//! time and a setup cost. A decision, taken at the instant the machine frees up,
//! picks the next class and a processing time inside that class's window; the
//! job then costs its setup cost, a compression charge proportional to how far
//! the time was shortened below nominal, and a tardiness charge proportional to
//! how far completion overruns the due date.
//!
//! The solver walks the state space backward. Each state records how many jobs
//! of every class are done plus the class that ran last, and holds its
//! cost-to-go as an exact piecewise-linear function of the decision instant.
//! Conditioning on the class chosen next reduces each step to a windowed
//! parametric argmin, which [`argmin_engine`] solves in closed form; the
//! unconditioned cost-to-go is the pointwise minimum over classes, and the spans
//! where several classes tie are kept alongside the resolved strategy.
//!
//! The result is a complete closed-form strategy: for every state, the class to
//! run and the processing time to grant, as functions of the current instant.
//! [`Solution::replay`] executes that strategy forward, optionally injecting
//! per-job start delays, and reports the realized cost, which at zero
//! perturbation reproduces the root cost-to-go exactly.

mod dp;
mod instance;
mod render;
mod replay;
mod state;

pub use dp::{solve, stage_cost, ClassConditioned, Solution, StateSolution, TieBreak};
pub use instance::{ClassSpec, InstanceError, JobSpec, ProblemInstance};
pub use render::{parse_segment, parse_span, render_segment, write_solution};
pub use replay::{Replay, ReplayStep, StrategyError};
pub use state::{state_space, SchedState};
