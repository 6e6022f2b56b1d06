//! Brute-force sequence enumeration for small instances.
//!
//! Every distinct class order is tried explicitly; within one order the
//! processing times form a linear program whose optimum sits at a vertex
//! where each processing time is at a window edge except when a completion
//! is pinned to its due date. Candidate completion times therefore chain
//! forward from the start instant and backward from each due date through
//! window edges, and a shortest-path pass over those candidates recovers the
//! exact optimal cost without exact arithmetic or gridding.

use crate::grid::GridSpec;
use dp_scheduler::ProblemInstance;
use pwl_core::{to_f64, Rat};

const WINDOW_EPS: f64 = 1e-9;

struct ClassF {
    low: f64,
    nom: f64,
    beta: f64,
    /// Per job in completion order: (tardiness weight, due date).
    jobs: Vec<(f64, f64)>,
}

struct Ctx {
    classes: Vec<ClassF>,
    setup_time: Vec<Vec<f64>>,
    setup_cost: Vec<Vec<f64>>,
}

struct Pos {
    st: f64,
    sc: f64,
    low: f64,
    nom: f64,
    beta: f64,
    alpha: f64,
    dd: f64,
}

/// Conservative agreement tolerance for [`enumerate_sequences`].
///
/// The candidate construction is exact up to floating-point rounding, so any
/// positive bound holds; this one scales with the coarsest window and the
/// total tardiness weight so it stays meaningful if the candidate set is
/// ever swapped for a plain grid of `spec.steps` cells.
pub fn enumeration_tolerance(inst: &ProblemInstance, spec: &GridSpec) -> f64 {
    let max_width = inst
        .classes()
        .iter()
        .map(|c| to_f64(&(&c.pt_nom - &c.pt_low)))
        .fold(0.0, f64::max);
    let alpha_sum: f64 = inst
        .classes()
        .iter()
        .flat_map(|c| c.jobs.iter().map(|j| to_f64(&j.alpha)))
        .sum();
    10.0 * (max_width / spec.steps as f64) * alpha_sum
}

/// Minimal total cost over all class orders, starting idle at `t0`.
///
/// Independent of the dynamic program: no cost-to-go functions, no exact
/// arithmetic, just explicit sequences and candidate completion times.
pub fn enumerate_sequences(inst: &ProblemInstance, t0: &Rat, spec: &GridSpec) -> f64 {
    spec.validate();
    let total = inst.total_jobs();
    assert!(total <= 7, "sequence enumeration is capped at 7 jobs");

    let n = inst.class_count();
    let ctx = Ctx {
        classes: inst
            .classes()
            .iter()
            .map(|c| ClassF {
                low: to_f64(&c.pt_low),
                nom: to_f64(&c.pt_nom),
                beta: to_f64(&c.beta),
                jobs: c.jobs.iter().map(|j| (to_f64(&j.alpha), to_f64(&j.due_date))).collect(),
            })
            .collect(),
        setup_time: (0..=n)
            .map(|r| (1..=n).map(|c| to_f64(inst.setup_time(r, c))).collect())
            .collect(),
        setup_cost: (0..=n)
            .map(|r| (1..=n).map(|c| to_f64(inst.setup_cost(r, c))).collect())
            .collect(),
    };

    let mut remaining: Vec<usize> = inst.classes().iter().map(|c| c.jobs.len()).collect();
    let mut seq = Vec::with_capacity(total);
    let mut best = f64::INFINITY;
    walk(&ctx, &mut remaining, &mut seq, total, to_f64(t0), &mut best);
    best
}

fn walk(
    ctx: &Ctx,
    remaining: &mut Vec<usize>,
    seq: &mut Vec<usize>,
    total: usize,
    t0: f64,
    best: &mut f64,
) {
    if seq.len() == total {
        *best = best.min(solve_sequence(ctx, seq, t0));
        return;
    }
    for c in 1..=remaining.len() {
        if remaining[c - 1] > 0 {
            remaining[c - 1] -= 1;
            seq.push(c);
            walk(ctx, remaining, seq, total, t0, best);
            seq.pop();
            remaining[c - 1] += 1;
        }
    }
}

/// Exact optimal cost of one fixed class order via candidate completions.
fn solve_sequence(ctx: &Ctx, seq: &[usize], t0: f64) -> f64 {
    let mut pos = Vec::with_capacity(seq.len());
    let mut done = vec![0usize; ctx.classes.len()];
    let mut last = 0usize;
    for &c in seq {
        let cls = &ctx.classes[c - 1];
        let (alpha, dd) = cls.jobs[done[c - 1]];
        done[c - 1] += 1;
        pos.push(Pos {
            st: ctx.setup_time[last][c - 1],
            sc: ctx.setup_cost[last][c - 1],
            low: cls.low,
            nom: cls.nom,
            beta: cls.beta,
            alpha,
            dd,
        });
        last = c;
    }

    // Backward chains: each due date propagated left through window edges.
    let mut bw: Vec<Vec<f64>> = vec![Vec::new(); pos.len()];
    for k in (0..pos.len()).rev() {
        let mut v = vec![pos[k].dd];
        if k + 1 < pos.len() {
            let next = &pos[k + 1];
            for y in &bw[k + 1] {
                v.push(y - next.st - next.low);
                v.push(y - next.st - next.nom);
            }
        }
        bw[k] = v;
    }

    // Shortest path over candidates, pruning dominated (later and costlier)
    // states: later completions can never cheapen the remaining jobs.
    let mut states: Vec<(f64, f64)> = vec![(t0, 0.0)];
    for (k, p) in pos.iter().enumerate() {
        let mut cand = bw[k].clone();
        for &(c, _) in &states {
            cand.push(c + p.st + p.low);
            cand.push(c + p.st + p.nom);
        }
        cand.sort_by(f64::total_cmp);
        cand.dedup();

        let mut cost = vec![f64::INFINITY; cand.len()];
        for &(c, acc) in &states {
            let lo = c + p.st + p.low - WINDOW_EPS;
            let hi = c + p.st + p.nom + WINDOW_EPS;
            let start = cand.partition_point(|&x| x < lo);
            for (i, &x) in cand[start..].iter().enumerate() {
                if x > hi {
                    break;
                }
                let pt = (x - c - p.st).clamp(p.low, p.nom);
                let step = p.sc + p.beta * (p.nom - pt) + p.alpha * (x - p.dd).max(0.0);
                cost[start + i] = cost[start + i].min(acc + step);
            }
        }

        let mut next = Vec::new();
        let mut floor = f64::INFINITY;
        for (i, &x) in cand.iter().enumerate() {
            if cost[i] < floor {
                floor = cost[i];
                next.push((x, cost[i]));
            }
        }
        states = next;
    }
    states.last().map_or(f64::INFINITY, |s| s.1)
}
