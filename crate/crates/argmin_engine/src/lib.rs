//! Exact minimization of `f(x + t) + g(x)` over a window `x ∈ [x₁, x₂]`,
//! parametrized by the shift `t`.
//!
//! `f` is a continuous nondecreasing piecewise-linear cost and `g` a
//! deviation cost that is affine decreasing on the window. For every `t` the
//! minimizer `x°(t)` is one of: the nominal value `x₂`, the fully compressed
//! value `x₁`, or a point tracking a breakpoint of `f` (so that `x + t`
//! stays put while `t` grows). As `t` increases, `x°(t)` drifts down through
//! these regimes and occasionally jumps back up to `x₂`; the jump instants
//! are computed exactly by [`omega`] and assembled into a closed-form
//! policy by [`argmin_policy`]. The attained minimum as a function of `t`
//! ([`value_function`]) is again continuous nondecreasing piecewise-linear,
//! which is what makes backward induction over these objects closed.
//!
//! All arithmetic is exact rational; nothing here rounds.

mod crossing;
mod envelope;
mod omega;
mod policy;
mod value;

pub use crossing::{CrossingSets, crossing_sets};
pub use omega::{Omega, TraceRow, TracedOmega, omega, omega_traced};
pub use policy::{ArgminPolicy, JumpTimes, Segment, argmin_policy};
pub use value::{solve_window, value_function};
