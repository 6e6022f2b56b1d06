//! Exact piecewise-linear calculus for scheduling cost functions.
//!
//! Everything downstream (jump-time computation, windowed argmin policies, the
//! backward dynamic program) is built from three values defined here:
//!
//! * [`Rat`] — arbitrary-precision rationals. Optimal switch times routinely
//!   land on repeating decimals (40/3, 338/15, ...), so the core never touches
//!   floats; they appear only at the I/O boundary and in brute-force oracles.
//! * [`PwlFunction`] — continuous nondecreasing piecewise-linear functions in
//!   canonical form: constant before the first breakpoint, strictly increasing
//!   breakpoints, nonnegative slopes, no two adjacent slopes equal. The class
//!   is closed under [`PwlFunction::shift`], [`PwlFunction::sum`],
//!   [`PwlFunction::min_of`], and constant offsets, which is exactly the
//!   algebra a cost-to-go recursion needs.
//! * [`DeviationCost`] — the compression-cost window `g(x) = ν(x₂ − x)` on
//!   `[x₁, x₂)`, zero elsewhere.
//!
//! Canonical form makes structural equality decide pointwise equality, so
//! golden tests compare functions with `==` and zero tolerance.

mod deviation;
mod function;
mod interval;
pub mod rational;

pub use deviation::DeviationCost;
pub use function::{MinResult, PwlFunction, Winner};
pub use interval::Span;
pub use rational::{Rat, overline_decimal, parse_rational, rat, ratio, to_f64};

/// Errors raised by constructors and parsers in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PwlError {
    #[error("breakpoints must be nondecreasing: {prev} is followed by {next}")]
    UnorderedBreakpoints { prev: Rat, next: Rat },
    #[error("slope {slope} at breakpoint {at} is negative")]
    NegativeSlope { at: Rat, slope: Rat },
    #[error("ramp slope must be positive, got {0}")]
    RampSlope(Rat),
    #[error("deviation window is empty: x1 = {x1}, x2 = {x2}")]
    EmptyWindow { x1: Rat, x2: Rat },
    #[error("deviation rate must be positive, got {0}")]
    NonpositiveRate(Rat),
    #[error("cannot parse {0:?} as a rational")]
    ParseNumber(String),
    #[error("cannot parse piecewise function: {0}")]
    ParseFunction(String),
}
