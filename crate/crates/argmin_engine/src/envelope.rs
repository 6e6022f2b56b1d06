//! Direct minimizer construction for windows where ν ties one of `f`'s
//! slopes.
//!
//! The walk's closed-form jump expressions divide by slope gaps `μ − ν`,
//! which vanish on tied cells, so such windows are built directly from the
//! geometry: for every `t` the minimum of `f(t + x) + g(x)` is attained at a
//! window edge or at a valley floor of the discounted profile `f(y) − νy`.
//! Between the instants where an edge crosses a breakpoint all candidates
//! are plain lines in `t`, so the rule follows their lower envelope. The
//! incumbent candidate is held while it still attains the minimum — exact
//! ties never force a move, which pins down one selection among equally
//! good rules — and when it stops, the rule jumps to the nominal edge if
//! optimal, else to the rightmost optimal valley.
//!
//! On windows the walk also accepts, both constructions agree piece for
//! piece; the unit tests sweep randomized cases to hold that alignment.

use num_traits::Zero;
use pwl_core::{DeviationCost, PwlFunction, Rat, Span};

use crate::crossing::crossing_sets;
use crate::omega::Omega;
use crate::policy::{ArgminPolicy, JumpTimes, Segment};

/// `value(t) = a + b·t` on some interval.
#[derive(Debug, Clone, PartialEq)]
struct Line {
    a: Rat,
    b: Rat,
}

impl Line {
    fn at(&self, t: &Rat) -> Rat {
        &self.a + &self.b * t
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Candidate {
    LeftEdge,
    RightEdge,
    Anchor(usize),
}

pub(crate) fn envelope_policy(f: &PwlFunction, g: &DeviationCost) -> ArgminPolicy {
    let bps = f.breakpoints();
    let slopes = f.slopes();
    let (x1, x2, nu) = (g.x1(), g.x2(), g.nu());
    assert!(!bps.is_empty(), "a constant profile has no slope to tie ν");

    // Valley floors of the discounted profile: descending in, not descending
    // out. A flat valley bottom is anchored at its left end.
    let mut anchors: Vec<(Rat, Line)> = Vec::new();
    for (k, bp) in bps.iter().enumerate() {
        let left = if k == 0 { Rat::zero() } else { slopes[k - 1].clone() };
        if left < *nu && slopes[k] >= *nu {
            let line = Line { a: f.eval(bp) + nu * &(x2 - bp), b: nu.clone() };
            anchors.push((bp.clone(), line));
        }
    }

    let mut events: Vec<Rat> = Vec::new();
    for bp in bps {
        events.push(bp - x1);
        events.push(bp - x2);
    }
    events.sort();
    events.dedup();

    let mut pieces: Vec<(Span, Segment)> = Vec::new();
    let mut push = |span: Span, seg: Segment| {
        if span.is_empty() {
            return;
        }
        match pieces.last_mut() {
            Some((last, prev)) if *prev == seg && last.end == span.start => last.end = span.end,
            _ => pieces.push((span, seg)),
        }
    };

    // Far left the whole window sits on f's flat initial piece, where waiving
    // the compression is free and strictly best.
    let mut current = Candidate::RightEdge;
    push(Span::new(None, Some(events[0].clone())), Segment::Const(x2.clone()));

    let segment_of = |c: Candidate| match c {
        Candidate::LeftEdge => Segment::Const(x1.clone()),
        Candidate::RightEdge => Segment::Const(x2.clone()),
        Candidate::Anchor(i) => Segment::Descending { intercept: anchors[i].0.clone() },
    };

    for w in 0..events.len() {
        let s = &events[w];
        let e = events.get(w + 1);

        let edge_line = |x: &Rat| {
            let y = s + x;
            let b = f.slope_right_of(&y);
            let a = f.eval(&y) + nu * &(x2 - x) - &b * s;
            Line { a, b }
        };
        let a_line = edge_line(x1);
        let b_line = edge_line(x2);
        let available: Vec<usize> = (0..anchors.len())
            .filter(|i| {
                let u = &anchors[*i].0;
                &(u - x2) <= s && e.is_some_and(|ev| ev <= &(u - x1))
            })
            .collect();
        let best_a = available.iter().map(|i| anchors[*i].1.a.clone()).min();
        let best_line = best_a.map(|a| Line { a, b: nu.clone() });

        // An anchor hands off to the floor the instant it leaves the window;
        // the left edge then rides the same valley at the same value.
        if let Candidate::Anchor(i) = current {
            if !available.contains(&i) {
                current = Candidate::LeftEdge;
            }
        }
        let line_of = |c: Candidate| match c {
            Candidate::LeftEdge => a_line.clone(),
            Candidate::RightEdge => b_line.clone(),
            Candidate::Anchor(i) => anchors[i].1.clone(),
        };

        // Split the interval at every crossing of the contending lines.
        let mut contenders = vec![a_line.clone(), b_line.clone()];
        contenders.extend(best_line.clone());
        contenders.push(line_of(current));
        let mut cuts: Vec<Rat> = Vec::new();
        for (p, q) in contenders
            .iter()
            .enumerate()
            .flat_map(|(i, p)| contenders[i + 1..].iter().map(move |q| (p, q)))
        {
            if p.b == q.b {
                continue;
            }
            let t = (&q.a - &p.a) / (&p.b - &q.b);
            if &t > s && e.is_none_or(|ev| &t < ev) {
                cuts.push(t);
            }
        }
        cuts.sort();
        cuts.dedup();

        let mut lo = s.clone();
        let mut bounds: Vec<Option<Rat>> = cuts.into_iter().map(Some).collect();
        bounds.push(e.cloned());
        for hi in bounds {
            let mid = match &hi {
                Some(h) => (&lo + h) / Rat::from_integer(2.into()),
                None => &lo + Rat::from_integer(1.into()),
            };
            let mut min = a_line.at(&mid).min(b_line.at(&mid));
            if let Some(c) = &best_line {
                min = min.min(c.at(&mid));
            }
            // An optimal valley takes priority even on exact ties: the
            // canonical shape starts its descent the instant the valley
            // enters the window, which keeps every regime change either
            // continuous or an upward jump. Otherwise the incumbent holds
            // while it stays optimal, and a fresh pick prefers the nominal
            // edge.
            let anchor_pick = available
                .iter()
                .filter(|i| anchors[**i].1.at(&mid) == min)
                .max_by_key(|i| anchors[**i].0.clone());
            current = if let Some(i) = anchor_pick {
                Candidate::Anchor(*i)
            } else if line_of(current).at(&mid) == min {
                current
            } else if b_line.at(&mid) == min {
                Candidate::RightEdge
            } else {
                Candidate::LeftEdge
            };
            push(Span::new(Some(lo.clone()), hi.clone()), segment_of(current));
            if let Some(h) = hi {
                lo = h;
            }
        }
    }

    let sets = crossing_sets(f, nu);
    let mut omegas = vec![Omega::PlusInf; sets.b.len()];
    let mut tstars: Vec<Rat> = Vec::new();
    let mut sources: Vec<usize> = Vec::new();
    for pair in pieces.windows(2) {
        let t = pair[0].0.end.clone().expect("interior boundary");
        let before = pair[0].1.value_at(&t);
        let after = pair[1].1.value_at(&t);
        if after <= before {
            continue;
        }
        let (y_lo, y_hi) = (&t + before, &t + after);
        let passed: Vec<usize> = (1..=sets.b.len())
            .filter(|j| {
                let gb = &bps[sets.b[j - 1] - 1];
                y_lo < *gb && *gb <= y_hi
            })
            .collect();
        let j = *passed.last().expect("an upward jump clears a downward crossing");
        tstars.push(t.clone());
        sources.push(j);
        for j in passed {
            if omegas[j - 1] == Omega::PlusInf {
                omegas[j - 1] = Omega::Finite(t.clone());
            }
        }
    }

    ArgminPolicy::from_parts(
        pieces,
        JumpTimes { omegas, tstars, sources },
        x1.clone(),
        x2.clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policy::argmin_policy;
    use crate::value::value_function;
    use pwl_core::parse_rational;

    fn r(text: &str) -> Rat {
        parse_rational(text).unwrap()
    }

    fn func(init: &str, pieces: &[(&str, &str)]) -> PwlFunction {
        PwlFunction::new(r(init), pieces.iter().map(|(b, m)| (r(b), r(m)))).unwrap()
    }

    fn dev(x1: &str, x2: &str, nu: &str) -> DeviationCost {
        DeviationCost::new(r(x1), r(x2), r(nu)).unwrap()
    }

    fn assert_optimal_everywhere(f: &PwlFunction, g: &DeviationCost, policy: &ArgminPolicy) {
        // Probe a dense set of instants; compare against brute minimization
        // over the window endpoints, interior breakpoints, and the policy's
        // own pick.
        let mut probes: Vec<Rat> = Vec::new();
        for (span, _) in policy.pieces() {
            if let Some(s) = &span.start {
                probes.push(s.clone());
                probes.push(s + r("1/7"));
                probes.push(s - r("1/7"));
            }
        }
        probes.push(r("-100"));
        probes.push(r("100"));
        for t in probes {
            let x = policy.eval(&t);
            assert!(&x >= g.x1() && &x <= g.x2(), "pick outside window at t={t}");
            let got = f.eval(&(&t + &x)) + g.eval(&x);
            let mut best = f.eval(&(&t + g.x1())) + g.eval(g.x1());
            let alt = f.eval(&(&t + g.x2())) + g.eval(g.x2());
            if alt < best {
                best = alt;
            }
            for bp in f.breakpoints() {
                let cand = bp - &t;
                if &cand > g.x1() && &cand < g.x2() {
                    let v = f.eval(bp) + g.eval(&cand);
                    if v < best {
                        best = v;
                    }
                }
            }
            assert_eq!(got, best, "suboptimal pick at t={t}");
        }
    }

    #[test]
    fn tied_tail_holds_the_floor() {
        // Final slope equals ν: past the descent the whole window is
        // cost-flat and the rule keeps x₁.
        let f = func("0", &[("10", "3"), ("12", "1")]);
        let g = dev("2", "5", "1");
        let policy = envelope_policy(&f, &g);
        assert_eq!(
            policy.pieces(),
            &[
                (Span::new(None, Some(r("5"))), Segment::Const(r("5"))),
                (Span::new(Some(r("5")), Some(r("8"))), Segment::Descending { intercept: r("10") }),
                (Span::new(Some(r("8")), None), Segment::Const(r("2"))),
            ]
        );
        assert!(policy.jumps().tstars.is_empty());
        assert_optimal_everywhere(&f, &g, &policy);
    }

    #[test]
    fn flat_valley_bottom_descends_to_its_left_end() {
        // Slopes cross ν downward, run level with it, then climb: the
        // descent pins the left end of the level bottom the moment it enters
        // the window, and the floor rides the bottom after it leaves.
        let f = func("0", &[("0", "1/2"), ("4", "1"), ("6", "3")]);
        let g = dev("1", "3", "1");
        let policy = envelope_policy(&f, &g);
        assert_eq!(
            policy.pieces(),
            &[
                (Span::new(None, Some(r("1"))), Segment::Const(r("3"))),
                (Span::new(Some(r("1")), Some(r("3"))), Segment::Descending { intercept: r("4") }),
                (Span::new(Some(r("3")), None), Segment::Const(r("1"))),
            ]
        );
        assert!(policy.jumps().tstars.is_empty());
        assert_optimal_everywhere(&f, &g, &policy);
    }

    #[test]
    fn tied_shelf_mid_descent_is_left_after_its_ride() {
        // A level run with slope ν in the middle of a descent: riding its
        // left end is optimal while the window sits on it, then the rule
        // jumps onward toward the true valley at 8.
        let f = func("0", &[("0", "1/4"), ("2", "1"), ("5", "1/4"), ("8", "4")]);
        let g = dev("1", "2", "1");
        let policy = envelope_policy(&f, &g);
        assert_eq!(
            policy.pieces(),
            &[
                (Span::new(None, Some(r("0"))), Segment::Const(r("2"))),
                (Span::new(Some(r("0")), Some(r("1"))), Segment::Descending { intercept: r("2") }),
                (Span::new(Some(r("1")), Some(r("3"))), Segment::Const(r("1"))),
                (Span::new(Some(r("3")), Some(r("6"))), Segment::Const(r("2"))),
                (Span::new(Some(r("6")), Some(r("7"))), Segment::Descending { intercept: r("8") }),
                (Span::new(Some(r("7")), None), Segment::Const(r("1"))),
            ]
        );
        assert_eq!(policy.jumps().tstars, vec![r("3")]);
        assert_optimal_everywhere(&f, &g, &policy);
    }

    #[test]
    fn equal_valleys_hold_the_incumbent() {
        // Two valleys at exactly equal discounted value: the rule stays in
        // the first until it leaves the window, then jumps.
        let f = func("0", &[("0", "2"), ("1", "1"), ("3", "0"), ("4", "2"), ("5", "1")]);
        let g = dev("1", "4", "1");
        let policy = envelope_policy(&f, &g);
        assert_optimal_everywhere(&f, &g, &policy);
    }

    #[test]
    fn matches_the_walk_on_untied_windows() {
        // Pseudo-random windows with ν strictly between slope levels: the
        // walk accepts them, and both constructions must agree exactly.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move |m: u64| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % m
        };
        let mut checked = 0;
        for _ in 0..400 {
            let n = 1 + next(5) as usize;
            let mut events = Vec::new();
            let mut bp = -(next(9) as i64);
            let mut last_num = u64::MAX;
            for _ in 0..n {
                let num = next(13);
                if num == last_num {
                    continue;
                }
                last_num = num;
                events.push((Rat::from_integer(bp.into()), Rat::new(num.into(), 2.into())));
                bp += 1 + next(6) as i64;
            }
            let f = match PwlFunction::new(Rat::zero(), events) {
                Ok(f) if !f.slopes().is_empty() => f,
                _ => continue,
            };
            // ν strictly between adjacent slope levels, or above them all.
            let mut levels: Vec<Rat> = f.slopes().to_vec();
            levels.push(Rat::zero());
            levels.sort();
            levels.dedup();
            let pick = next(levels.len() as u64) as usize;
            let nu = if pick + 1 < levels.len() {
                (&levels[pick] + &levels[pick + 1]) / Rat::from_integer(2.into())
            } else {
                levels.last().unwrap() + Rat::new(1.into(), 3.into())
            };
            if nu.is_zero() {
                continue;
            }
            let x1 = Rat::from_integer((next(4) as i64).into());
            let width = Rat::new((1 + next(8) as i64).into(), 2.into());
            let g = DeviationCost::new(x1.clone(), x1 + width, nu).unwrap();

            let walk = argmin_policy(&f, &g);
            let direct = envelope_policy(&f, &g);
            assert_eq!(walk.pieces(), direct.pieces(), "pieces differ for f=`{f}`");
            assert_eq!(walk.jumps(), direct.jumps(), "jumps differ for f=`{f}`");
            value_function(&f, &g, &direct);
            checked += 1;
        }
        assert!(checked > 200, "only {checked} randomized windows were exercised");
    }
}
