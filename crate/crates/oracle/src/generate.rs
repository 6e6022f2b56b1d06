//! Seeded generators for randomized cross-checking.
//!
//! All draws use small rationals (denominators 1..4) so exact arithmetic
//! stays cheap and printed counterexamples stay readable. [`random_case`]
//! keeps the minimizer unique: the compression rate is drawn strictly
//! between or strictly above the slopes of the partner function, and pairs
//! whose discounted valley floors tie in value are redrawn — in either
//! degenerate situation two different answers are equally correct and no
//! finite tolerance can separate them. [`random_tied_case`] deliberately
//! produces rate-slope ties for checks that only compare attained values.

use dp_scheduler::{ClassSpec, JobSpec, ProblemInstance};
use num_traits::Zero;
use pwl_core::{DeviationCost, PwlFunction, Rat};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A reproducible generator stream.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(rng: &mut impl Rng, lo: i64, hi: i64) -> Rat {
    let den = rng.gen_range(1..=4);
    Rat::new(rng.gen_range(lo * den..=hi * den).into(), den.into())
}

fn positive(rng: &mut impl Rng, hi: i64) -> Rat {
    let den = rng.gen_range(1..=4);
    Rat::new(rng.gen_range(1..=hi * den).into(), den.into())
}

/// A random continuous nondecreasing piecewise-linear function.
pub fn random_function(rng: &mut impl Rng) -> PwlFunction {
    loop {
        let init = small(rng, -20, 20);
        let n = rng.gen_range(1..=8);
        let mut pieces = Vec::with_capacity(n);
        let mut x = small(rng, -30, 30);
        for _ in 0..n {
            let slope = if rng.gen_bool(0.2) { Rat::zero() } else { positive(rng, 6) };
            pieces.push((x.clone(), slope));
            x += positive(rng, 8);
        }
        let f = PwlFunction::new(init, pieces).unwrap();
        if f.piece_count() > 0 {
            return f;
        }
    }
}

/// A random window-and-rate pair for the given function.
///
/// Half the draws place the rate strictly between two consecutive distinct
/// slopes of `f` (so the minimizer jumps between interior kinks); the rest
/// place it strictly above every slope (so compression always pays and the
/// minimizer hugs the window's upper edge until tardiness takes over).
pub fn random_deviation(rng: &mut impl Rng, f: &PwlFunction) -> DeviationCost {
    let mut ladder: Vec<Rat> = f.slopes().to_vec();
    ladder.push(Rat::zero());
    ladder.sort();
    ladder.dedup();

    let nu = if ladder.len() >= 2 && rng.gen_bool(0.5) {
        let i = rng.gen_range(0..ladder.len() - 1);
        (&ladder[i] + &ladder[i + 1]) / Rat::from_integer(2.into())
    } else {
        ladder.last().unwrap() + positive(rng, 3)
    };

    let x1 = small(rng, 0, 4);
    let x2 = &x1 + positive(rng, 5);
    DeviationCost::new(x1, x2, nu).unwrap()
}

/// Discounted values `f(γ) − νγ` at the valley floors of `f − ν·id` (the
/// breakpoints where the slope crosses ν upward). Two equal values would tie
/// the minimizer across a whole interval of shifts.
fn valley_values(f: &PwlFunction, nu: &Rat) -> Vec<Rat> {
    let slopes = f.slopes();
    f.breakpoints()
        .iter()
        .enumerate()
        .filter(|(k, _)| {
            let left = if *k == 0 { Rat::zero() } else { slopes[k - 1].clone() };
            left < *nu && slopes[*k] >= *nu
        })
        .map(|(_, bp)| f.eval(bp) - nu * bp)
        .collect()
}

/// A random function/window pair ready for cross-checking.
///
/// Pairs whose discounted valley floors tie in value are redrawn: under such
/// a tie the minimizer is interval-valued for a stretch of shifts, and any
/// point selection from it would disagree with an equally correct one.
pub fn random_case(rng: &mut impl Rng) -> (PwlFunction, DeviationCost) {
    loop {
        let f = random_function(rng);
        let g = random_deviation(rng, &f);
        let mut values = valley_values(&f, g.nu());
        values.sort();
        let n = values.len();
        values.dedup();
        if values.len() == n {
            return (f, g);
        }
    }
}

/// A random pair whose rate exactly matches one of the function's slopes,
/// for exercising the tied-cell construction.
pub fn random_tied_case(rng: &mut impl Rng) -> (PwlFunction, DeviationCost) {
    loop {
        let f = random_function(rng);
        let climbing: Vec<&Rat> = f.slopes().iter().filter(|m| !m.is_zero()).collect();
        if climbing.is_empty() {
            continue;
        }
        let nu = climbing[rng.gen_range(0..climbing.len())].clone();
        let x1 = small(rng, 0, 4);
        let x2 = &x1 + positive(rng, 5);
        return (f, DeviationCost::new(x1, x2, nu).unwrap());
    }
}

fn setup_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Vec<Vec<Rat>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| Rat::new(rng.gen_range(0..=4).into(), 2.into())).collect())
        .collect()
}

/// A random scheduling instance with at most `max_jobs` jobs.
///
/// Half the instances are setup-free so both state-space shapes get
/// exercised. Tardiness weights are halves, so every stage-cost slope lands
/// on the half-integer lattice; compression rates are odd quarters and so
/// never collide with a slope, keeping per-class minimizers unique.
pub fn random_instance(rng: &mut impl Rng, max_jobs: usize) -> ProblemInstance {
    assert!(max_jobs >= 1);
    let class_count = rng.gen_range(1..=3usize.min(max_jobs));
    let mut budget = max_jobs - class_count;

    let mut classes = Vec::with_capacity(class_count);
    for _ in 0..class_count {
        let extra = rng.gen_range(0..=budget.min(1));
        budget -= extra;
        let mut dds: Vec<Rat> = (0..1 + extra).map(|_| small(rng, -10, 25)).collect();
        dds.sort();
        let jobs: Vec<JobSpec> = dds
            .into_iter()
            .map(|due_date| JobSpec {
                alpha: Rat::new(rng.gen_range(1..=6).into(), 2.into()),
                due_date,
            })
            .collect();
        let pt_low = positive(rng, 3);
        let pt_nom = &pt_low + positive(rng, 3);
        let beta = Rat::new((2 * rng.gen_range(1..=12) - 1).into(), 4.into());
        classes.push(ClassSpec { beta, pt_low, pt_nom, jobs });
    }

    let (setup_time, setup_cost) = if rng.gen_bool(0.5) {
        (None, None)
    } else {
        (
            Some(setup_matrix(rng, class_count + 1, class_count)),
            Some(setup_matrix(rng, class_count + 1, class_count)),
        )
    };

    ProblemInstance::new(classes, setup_time, setup_cost).unwrap()
}
