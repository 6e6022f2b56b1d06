//! Counted invariant suites.
//!
//! Each function asserts a family of invariants on one input and returns how
//! many individual assertions it performed, so callers can accumulate counts
//! across randomized inputs and insist on a minimum volume of evidence.

use crate::grid::{grid_argmin, sample_instants, GridSpec};
use argmin_engine::solve_window;
use dp_scheduler::{stage_cost, Solution, StateSolution, TieBreak};
use num_traits::Zero;
use pwl_core::{to_f64, DeviationCost, PwlFunction, Rat, Span};

fn half(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

/// Evaluation points around every breakpoint of `f`, plus both tails.
fn probes(f: &PwlFunction) -> Vec<Rat> {
    let bps = f.breakpoints();
    let Some(first) = bps.first() else {
        return vec![half(-10, 1), Rat::zero(), half(10, 1)];
    };
    let mut ts = vec![first - half(7, 3)];
    for w in bps.windows(2) {
        ts.push(w[0].clone());
        ts.push((&w[0] + &w[1]) / half(2, 1));
    }
    let last = bps.last().unwrap();
    ts.push(last.clone());
    ts.push(last + half(9, 2));
    ts
}

/// A point inside a span, preferring the midpoint when both ends are finite.
fn span_point(span: &Span) -> Rat {
    match (&span.start, &span.end) {
        (Some(a), Some(b)) => (a + b) / half(2, 1),
        (Some(a), None) => a + half(1, 1),
        (None, Some(b)) => b - half(1, 1),
        (None, None) => Rat::zero(),
    }
}

fn assert_canonical(f: &PwlFunction) -> usize {
    let mut n = 0;
    for w in f.breakpoints().windows(2) {
        assert!(w[0] < w[1], "breakpoints out of order in {f}");
        n += 1;
    }
    for w in f.slopes().windows(2) {
        assert!(w[0] != w[1], "mergeable pieces left in {f}");
        n += 1;
    }
    for m in f.slopes() {
        assert!(*m >= Rat::zero(), "negative slope in {f}");
        n += 1;
    }
    if let Some(first) = f.slopes().first() {
        assert!(!first.is_zero(), "leading zero slope in {f}");
        n += 1;
    }
    n
}

fn assert_spans_tile(spans: impl Iterator<Item = Span>) -> usize {
    let mut n = 0;
    let mut prev_end: Option<Option<Rat>> = None;
    for span in spans {
        match prev_end {
            None => {
                assert!(span.start.is_none(), "first span must be unbounded left");
                n += 1;
            }
            Some(end) => {
                assert_eq!(end, span.start, "gap or overlap between spans");
                n += 1;
            }
        }
        prev_end = Some(span.end.clone());
    }
    assert_eq!(prev_end, Some(None), "last span must be unbounded right");
    n + 1
}

/// Sum and pointwise-minimum invariants for one pair of functions.
pub fn check_pwl_closure(f1: &PwlFunction, f2: &PwlFunction) -> usize {
    let mut n = 0;

    let sum = f1.sum(f2);
    n += assert_canonical(&sum);
    let mut ts = probes(f1);
    ts.extend(probes(f2));
    ts.extend(probes(&sum));
    for t in &ts {
        assert_eq!(sum.eval(t), f1.eval(t) + f2.eval(t), "sum mismatch at {t}");
        n += 1;
    }

    let mr = f1.min_of(f2);
    n += assert_canonical(&mr.func);
    ts.extend(probes(&mr.func));
    for t in &ts {
        let lo = f1.eval(t).min(f2.eval(t));
        assert_eq!(mr.func.eval(t), lo, "min mismatch at {t}");
        n += 1;
    }
    n += assert_spans_tile(mr.winners.iter().map(|(s, _)| s.clone()));
    for (span, winner) in &mr.winners {
        let t = span_point(span);
        let (a, b) = (f1.eval(&t), f2.eval(&t));
        match winner {
            pwl_core::Winner::First => assert!(a <= b, "first not winning at {t}"),
            pwl_core::Winner::Second => assert!(b <= a, "second not winning at {t}"),
            pwl_core::Winner::Tie => assert_eq!(a, b, "tie broken at {t}"),
        }
        n += 1;
    }
    n
}

/// Continuity, monotonicity and optimality of one windowed solve.
pub fn check_window_solution(f: &PwlFunction, g: &DeviationCost) -> usize {
    let mut n = 0;
    let (policy, h) = solve_window(f, g);
    n += assert_canonical(&h);

    // Piecewise coherence: differences reproduce slope times run everywhere,
    // which pins evaluation and representation to one continuous function.
    let bps = h.breakpoints();
    if let Some(first) = bps.first() {
        assert_eq!(h.eval(&(first - half(5, 1))), *h.initial_value());
        assert_eq!(h.eval(first), *h.initial_value());
        n += 2;
        for (i, w) in bps.windows(2).enumerate() {
            let run = &w[1] - &w[0];
            assert_eq!(h.eval(&w[1]) - h.eval(&w[0]), &h.slopes()[i] * run);
            n += 1;
        }
        let last = bps.last().unwrap();
        let probe = last + half(5, 1);
        assert_eq!(h.eval(&probe) - h.eval(last), h.final_slope() * half(5, 1));
        n += 1;
    }

    let mut ts: Vec<Rat> = policy.pieces().iter().map(|(s, _)| span_point(s)).collect();
    ts.extend(policy.pieces().iter().filter_map(|(s, _)| s.start.clone()));
    ts.extend(probes(&h));
    ts.sort();
    ts.dedup();

    let (x1, x2) = policy.bounds();
    let mut prev: Option<(Rat, Rat)> = None;
    for t in &ts {
        let x = policy.eval(t);
        assert!(&x >= x1 && &x <= x2, "minimizer {x} outside window at {t}");
        assert_eq!(h.eval(t), f.eval(&(t + &x)) + g.eval(&x), "value/policy split at {t}");
        if let Some((pt, pv)) = prev {
            if pt < *t {
                assert!(pv <= h.eval(t), "value decreased between {pt} and {t}");
                n += 1;
            }
        }
        prev = Some((t.clone(), h.eval(t)));
        n += 2;
    }
    n += assert_spans_tile(policy.pieces().iter().map(|(s, _)| s.clone()));
    n
}

fn strategy_probe_points(state: &StateSolution, tie: TieBreak) -> Vec<Rat> {
    let mut ts: Vec<Rat> = state
        .pt_strategy(tie)
        .iter()
        .map(|(s, _)| span_point(s))
        .chain(state.pt_strategy(tie).iter().filter_map(|(s, _)| s.start.clone()))
        .collect();
    ts.extend(state.class_strategy(tie).iter().map(|(s, _)| span_point(s)));
    ts.sort();
    ts.dedup();
    ts
}

/// Strategy tables stay inside their class windows and tile the time axis.
pub fn check_strategy_bounds(sol: &Solution) -> usize {
    let mut n = 0;
    for state in sol.states().iter().filter(|s| !s.is_terminal()) {
        for tie in [TieBreak::LowestClass, TieBreak::HighestClass] {
            let tau = state.pt_strategy(tie);
            let delta = state.class_strategy(tie);
            n += assert_spans_tile(tau.iter().map(|(s, _)| s.clone()));
            n += assert_spans_tile(delta.iter().map(|(s, _)| s.clone()));
            for w in tau.windows(2) {
                assert!(w[0].1 != w[1].1, "unmerged duplicate rows in strategy table");
                n += 1;
            }
            for t in strategy_probe_points(state, tie) {
                let (class, pt) = sol.eval_strategy(&state.state, &t, tie).unwrap();
                let spec = &sol.instance().classes()[class - 1];
                assert!(state.state.completed[class - 1] < spec.jobs.len());
                assert!(pt >= spec.pt_low && pt <= spec.pt_nom, "pt {pt} escapes window");
                let row_class = delta
                    .iter()
                    .find(|(s, _)| s.contains(&t))
                    .map(|(_, c)| *c)
                    .unwrap();
                assert_eq!(row_class, class, "class table disagrees with evaluator at {t}");
                let row_pt = tau
                    .iter()
                    .find(|(s, _)| s.contains(&t))
                    .map(|(_, seg)| seg.value_at(&t))
                    .unwrap();
                assert_eq!(row_pt, pt, "time table disagrees with evaluator at {t}");
                n += 4;
            }
        }
    }
    n
}

/// One-step optimality of every recorded cost-to-go.
pub fn check_bellman(sol: &Solution) -> usize {
    let mut n = 0;
    let inst = sol.instance();
    for state in sol.states().iter().filter(|s| !s.is_terminal()) {
        let mut ts = probes(&state.cost_to_go);
        for cond in state.per_class.iter().flatten() {
            ts.extend(probes(&cond.cost_to_go));
        }
        ts.sort();
        ts.dedup();

        for (class, cond) in state.per_class.iter().enumerate().filter_map(|(i, c)| {
            c.as_ref().map(|c| (i + 1, c))
        }) {
            let next = state.state.advance(class, inst);
            let next_cost = &sol.state(&next).unwrap().cost_to_go;
            let (f, g) = stage_cost(inst, &state.state, class, next_cost).unwrap();
            let (policy, h) = solve_window(&f, &g);
            assert_eq!(h, cond.cost_to_go, "conditioned cost drifted from its stage solve");
            assert_eq!(policy.pieces(), cond.pt_policy.pieces());
            n += 2;

            // The recorded value never beats any feasible one-step play, and
            // meets the recorded minimizer exactly.
            let (x1, x2) = (g.x1().clone(), g.x2().clone());
            let third = (&x2 - &x1) / half(3, 1);
            for t in &ts {
                for x in [&x1, &(&x1 + &third), &(&x2 - &third), &x2] {
                    assert!(
                        state.cost_to_go.eval(t) <= f.eval(&(t + x)) + g.eval(x),
                        "cost-to-go beats a feasible play at {t}"
                    );
                    n += 1;
                }
                let x = cond.pt_policy.eval(t);
                assert_eq!(cond.cost_to_go.eval(t), f.eval(&(t + &x)) + g.eval(&x));
                n += 1;
            }
        }

        for t in &ts {
            let best = state
                .per_class
                .iter()
                .flatten()
                .map(|c| c.cost_to_go.eval(t))
                .min()
                .unwrap();
            assert_eq!(state.cost_to_go.eval(t), best, "envelope misses a class at {t}");
            n += 1;
        }
        for (span, classes) in state.winner_sets() {
            let t = span_point(span);
            let value = state.cost_to_go.eval(&t);
            for &c in classes {
                let cond = state.per_class[c - 1].as_ref().unwrap();
                assert_eq!(cond.cost_to_go.eval(&t), value, "non-optimal class recorded at {t}");
                n += 1;
            }
        }
    }
    n
}

/// Closed-form minimizer and value against the dense float grid.
///
/// Instants too close to a jump are skipped: there the two local minima of
/// the objective are closer in value than the grid can resolve, so the grid
/// may legitimately land in the other basin. The skip radius shrinks with
/// the grid step, because the basin gap grows linearly away from the jump at
/// the rate the value function's slope kinks there.
pub fn check_grid_agreement(f: &PwlFunction, g: &DeviationCost, spec: &GridSpec) -> usize {
    let (policy, h) = solve_window(f, g);
    let step = to_f64(&g.width()) / spec.steps as f64;
    let nu = to_f64(g.nu());

    let exclusions: Vec<(f64, f64)> = policy
        .jumps()
        .tstars
        .iter()
        .map(|tstar| {
            let kink = h
                .breakpoints()
                .iter()
                .position(|bp| bp == tstar)
                .map(|i| {
                    let after = &h.slopes()[i];
                    let before = if i == 0 { Rat::zero() } else { h.slopes()[i - 1].clone() };
                    to_f64(&(after - before)).abs()
                })
                .unwrap_or(0.0);
            let radius = if kink > 0.0 { nu * step / kink } else { 0.0 };
            (to_f64(tstar), radius)
        })
        .collect();

    let ts = sample_instants(f, g, spec);
    let t_step = to_f64(&(&ts[1] - &ts[0]));
    let mut n = 0;
    for t in &ts {
        let tf = to_f64(t);
        if exclusions.iter().any(|(s, r)| (tf - s).abs() <= t_step.max(*r)) {
            continue;
        }
        let (xg, vg) = grid_argmin(f, g, t, spec);
        let xe = to_f64(&policy.eval(t));
        let ve = to_f64(&h.eval(t));
        assert!(
            (xg - xe).abs() <= step + 1e-9,
            "minimizer off grid at t={t}: grid {xg}, exact {xe}"
        );
        assert!(
            (vg - ve).abs() <= nu * step + 1e-9,
            "value off grid at t={t}: grid {vg}, exact {ve}"
        );
        n += 2;
    }
    n
}

/// Unperturbed replays land exactly on the recorded cost-to-go.
pub fn check_replay_roundtrip(sol: &Solution) -> usize {
    let mut n = 0;
    let root = sol.root();
    let total = sol.instance().total_jobs();
    let mut ts = probes(&root.cost_to_go);
    ts.push(half(-40, 1));
    ts.push(half(40, 1));
    for tie in [TieBreak::LowestClass, TieBreak::HighestClass] {
        for t0 in &ts {
            let rep = sol.replay(t0, &[], tie).unwrap();
            assert_eq!(rep.total_cost, root.cost_to_go.eval(t0), "replay drifted at {t0}");
            assert_eq!(rep.steps.len(), total);
            n += 2;
            for w in rep.steps.windows(2) {
                assert!(w[0].completion <= w[1].completion, "time ran backwards");
                n += 1;
            }
        }
    }
    n
}
