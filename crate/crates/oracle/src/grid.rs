//! Dense-grid argmin search over a conditioned stage cost.
//!
//! Everything here works in `f64` and re-evaluates the piecewise-linear
//! function from its raw breakpoint data, so agreement with the exact engine
//! is a genuine cross-check rather than the same arithmetic run twice.

use pwl_core::{to_f64, DeviationCost, PwlFunction, Rat};

/// Resolution knobs for the grid routines.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    /// Number of subdivisions of the compression window `[x1, x2]`.
    pub steps: usize,
    /// Number of decision instants sampled by [`sample_instants`].
    pub t_samples: usize,
    /// Seed for any randomized companion generators.
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { steps: 10_000, t_samples: 1_000, seed: 0 }
    }
}

impl GridSpec {
    pub fn new(steps: usize, t_samples: usize, seed: u64) -> Self {
        let spec = GridSpec { steps, t_samples, seed };
        spec.validate();
        spec
    }

    pub(crate) fn validate(&self) {
        assert!(self.steps >= 10, "grid needs at least 10 subdivisions");
        assert!(self.t_samples >= 10, "need at least 10 decision instants");
    }

    /// Width of one grid cell for a window of the given span.
    pub fn cell(&self, width: f64) -> f64 {
        width / self.steps as f64
    }
}

/// Evaluates a piecewise-linear function in floating point from its raw data.
fn eval_pwl_f64(init: f64, bps: &[f64], slopes: &[f64], x: f64) -> f64 {
    let mut value = init;
    for (i, bp) in bps.iter().enumerate() {
        if x <= *bp {
            break;
        }
        let end = if i + 1 < bps.len() { bps[i + 1].min(x) } else { x };
        value += slopes[i] * (end - bp);
    }
    value
}

/// Brute-force minimizer of `x -> f(t + x) + g(x)` over the window `[x1, x2]`.
///
/// Candidates are a uniform grid of `spec.steps + 1` points plus every
/// breakpoint of `f` shifted into the window, so kinks are always sampled
/// exactly. Ties keep the smallest candidate. Returns `(x, value)`.
pub fn grid_argmin(f: &PwlFunction, g: &DeviationCost, t: &Rat, spec: &GridSpec) -> (f64, f64) {
    spec.validate();
    let x1 = to_f64(g.x1());
    let x2 = to_f64(g.x2());
    let nu = to_f64(g.nu());
    let tf = to_f64(t);

    let init = to_f64(f.initial_value());
    let bps: Vec<f64> = f.breakpoints().iter().map(to_f64).collect();
    let slopes: Vec<f64> = f.slopes().iter().map(to_f64).collect();

    let mut candidates: Vec<f64> = (0..=spec.steps)
        .map(|k| x1 + (x2 - x1) * k as f64 / spec.steps as f64)
        .collect();
    for bp in &bps {
        let x = bp - tf;
        if x > x1 && x < x2 {
            candidates.push(x);
        }
    }
    candidates.sort_by(f64::total_cmp);

    let mut best_x = x1;
    let mut best = f64::INFINITY;
    for &x in &candidates {
        let value = eval_pwl_f64(init, &bps, &slopes, tf + x) + nu * (x2 - x);
        if value < best {
            best = value;
            best_x = x;
        }
    }
    (best_x, best)
}

/// Uniformly spaced decision instants covering every regime of the pair.
///
/// The range stretches from well before the first breakpoint of `f` enters
/// the window to well after the last one has left it, so constant tails on
/// both sides are exercised too.
pub fn sample_instants(f: &PwlFunction, g: &DeviationCost, spec: &GridSpec) -> Vec<Rat> {
    spec.validate();
    let margin = Rat::from_integer(2.into());
    let (lo, hi) = match (f.breakpoints().first(), f.breakpoints().last()) {
        (Some(first), Some(last)) => (first - g.x2() - &margin, last - g.x1() + &margin),
        _ => (-g.x2() - &margin, -g.x1() + &margin),
    };
    let span = &hi - &lo;
    let n = spec.t_samples;
    (0..=n)
        .map(|j| &lo + &span * Rat::new(j.into(), n.into()))
        .collect()
}
