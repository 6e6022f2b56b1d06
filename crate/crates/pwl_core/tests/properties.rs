//! Randomized invariants for the piecewise-linear algebra.

use num_traits::{One, Zero};
use proptest::prelude::*;
use pwl_core::{PwlFunction, Rat, Winner, rat, ratio};

fn arb_rat(num: std::ops::RangeInclusive<i64>, den: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = Rat> {
    (num, den).prop_map(|(p, q)| ratio(p, q))
}

/// Random canonical function: ascending breakpoints from accumulated positive
/// gaps, small-rational nonnegative slopes, possibly constant.
fn arb_pwl() -> impl Strategy<Value = PwlFunction> {
    let piece = (1i64..=20, 1i64..=6, 0i64..=12, 1i64..=6);
    (arb_rat(-8..=8, 1..=4), arb_rat(-40..=40, 1..=3), prop::collection::vec(piece, 0..8)).prop_map(
        |(init, start, raw)| {
            let mut g = start;
            let mut pieces = Vec::new();
            for (gap_num, gap_den, slope_num, slope_den) in raw {
                pieces.push((g.clone(), ratio(slope_num, slope_den)));
                g += ratio(gap_num, gap_den);
            }
            PwlFunction::new(init, pieces).unwrap()
        },
    )
}

/// Probe points covering every piece of both functions: breakpoints, segment
/// midpoints, and sentinels beyond each end.
fn probes(fs: &[&PwlFunction]) -> Vec<Rat> {
    let mut xs: Vec<Rat> = fs.iter().flat_map(|f| f.breakpoints().iter().cloned()).collect();
    xs.sort();
    xs.dedup();
    let mut out = Vec::with_capacity(2 * xs.len() + 2);
    if let (Some(first), Some(last)) = (xs.first(), xs.last()) {
        out.push(first - rat(5));
        for pair in xs.windows(2) {
            out.push((&pair[0] + &pair[1]) / rat(2));
        }
        out.push(last + rat(5));
    } else {
        out.push(rat(0));
    }
    out.extend(xs);
    out.sort();
    out.dedup();
    out
}

fn assert_canonical(f: &PwlFunction) {
    for pair in f.breakpoints().windows(2) {
        assert!(pair[0] < pair[1], "breakpoints out of order in {f}");
    }
    for m in f.slopes() {
        assert!(*m >= Rat::zero(), "negative slope in {f}");
    }
    for pair in f.slopes().windows(2) {
        assert_ne!(pair[0], pair[1], "unmerged equal slopes in {f}");
    }
    if let Some(first) = f.slopes().first() {
        assert!(!first.is_zero(), "leading zero slope in {f}");
    }
}

proptest! {
    #[test]
    fn sum_is_exact_and_canonical(f in arb_pwl(), g in arb_pwl()) {
        let s = f.sum(&g);
        assert_canonical(&s);
        for x in probes(&[&f, &g, &s]) {
            prop_assert_eq!(s.eval(&x), f.eval(&x) + g.eval(&x));
        }
        prop_assert_eq!(&s, &g.sum(&f));
    }

    #[test]
    fn sum_is_associative(f in arb_pwl(), g in arb_pwl(), h in arb_pwl()) {
        prop_assert_eq!(f.sum(&g).sum(&h), f.sum(&g.sum(&h)));
    }

    #[test]
    fn min_is_exact_and_canonical(f in arb_pwl(), g in arb_pwl()) {
        let m = f.min_of(&g);
        assert_canonical(&m.func);
        for x in probes(&[&f, &g, &m.func]) {
            let expected = f.eval(&x).min(g.eval(&x));
            prop_assert_eq!(m.func.eval(&x), expected);
        }
        prop_assert_eq!(&m.func, &g.min_of(&f).func);
        prop_assert_eq!(&f.min_of(&f).func, &f);
    }

    #[test]
    fn min_winner_regions_are_consistent(f in arb_pwl(), g in arb_pwl()) {
        let m = f.min_of(&g);
        // Spans tile the axis left to right.
        prop_assert!(m.winners.first().is_some_and(|(s, _)| s.start.is_none()));
        prop_assert!(m.winners.last().is_some_and(|(s, _)| s.end.is_none()));
        for pair in m.winners.windows(2) {
            prop_assert_eq!(&pair[0].0.end, &pair[1].0.start);
            prop_assert_ne!(pair[0].1, pair[1].1);
        }
        // Each label holds throughout its span (probes clamped into the span).
        for (span, winner) in &m.winners {
            for x in probes(&[&f, &g]) {
                if !span.contains(&x) {
                    continue;
                }
                let (fx, gx) = (f.eval(&x), g.eval(&x));
                match winner {
                    Winner::First => prop_assert!(fx <= gx),
                    Winner::Second => prop_assert!(gx <= fx),
                    Winner::Tie => prop_assert_eq!(fx, gx),
                }
            }
        }
    }

    #[test]
    fn eval_is_monotone_and_continuous(f in arb_pwl()) {
        let xs = probes(&[&f]);
        for pair in xs.windows(2) {
            prop_assert!(f.eval(&pair[0]) <= f.eval(&pair[1]));
        }
        // Exact two-sided continuity at every breakpoint with step 2^-40.
        let eps = Rat::one() / rat(1i64 << 40);
        for (i, g) in f.breakpoints().iter().enumerate() {
            let left_slope = if i == 0 { Rat::zero() } else { f.slopes()[i - 1].clone() };
            prop_assert_eq!(f.eval(g) - f.eval(&(g - &eps)), left_slope * &eps);
            prop_assert_eq!(f.eval(&(g + &eps)) - f.eval(g), &f.slopes()[i] * &eps);
        }
    }

    #[test]
    fn shift_translates_the_graph(f in arb_pwl(), t in arb_rat(-30..=30, 1..=4)) {
        let s = f.shift(&t);
        assert_canonical(&s);
        for x in probes(&[&f, &s]) {
            prop_assert_eq!(s.eval(&x), f.eval(&(&x + &t)));
        }
        prop_assert_eq!(s.shift(&(-&t)), f);
    }

    #[test]
    fn serialization_round_trips(f in arb_pwl()) {
        prop_assert_eq!(f.to_string().parse::<PwlFunction>().unwrap(), f);
    }

    #[test]
    fn add_constant_shifts_values(f in arb_pwl(), c in arb_rat(-9..=9, 1..=5)) {
        let g = f.add_constant(&c);
        for x in probes(&[&f]) {
            prop_assert_eq!(g.eval(&x), f.eval(&x) + &c);
        }
    }
}
