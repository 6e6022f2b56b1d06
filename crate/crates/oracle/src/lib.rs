//! Independent checks for the exact solvers.
//!
//! Everything here recomputes answers by a different route than the closed-form
//! code paths: piecewise-linear functions are re-evaluated in floating point,
//! windowed minima are taken over dense grids, and whole schedules are found by
//! enumerating every class sequence and optimizing processing times over
//! candidate completion sets. Agreement between the two routes, within the
//! documented grid tolerances, is what the acceptance campaigns assert.
//!
//! The [`generate`] module supplies seeded random inputs (functions, windows, and
//! scheduling instances) so campaigns are reproducible, and [`checks`] bundles
//! the exact structural property suites with assertion counting.

pub mod checks;
pub mod generate;

mod enumerate;
mod grid;

pub use enumerate::{enumerate_sequences, enumeration_tolerance};
pub use grid::{grid_argmin, sample_instants, GridSpec};
