//! The closed-form argmin rule `t ↦ x°(t)`.
//!
//! Between jumps the rule follows one canonical shape: hold the nominal
//! value `x₂` while the shifted cost is still flat enough, then track the
//! upward crossing breakpoint `γ_{a'}` (value `γ_{a'} − t`, which pins
//! `x + t` at the breakpoint), then hold the floor `x₁`. Each jump instant
//! `t*_q` restarts the shape against the next upward crossing. The policy is
//! right-continuous: at `t = t*_q` the post-jump regime applies.

use pwl_core::{DeviationCost, PwlFunction, Rat, Span};

use crate::crossing::crossing_sets;
use crate::omega::{Omega, omega};

/// One regime of the rule: a constant, or a descent `t ↦ intercept − t`
/// tracking the breakpoint at `intercept`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    Const(Rat),
    Descending { intercept: Rat },
}

impl Segment {
    pub fn value_at(&self, t: &Rat) -> Rat {
        match self {
            Segment::Const(v) => v.clone(),
            Segment::Descending { intercept } => intercept - t,
        }
    }
}

/// Jump bookkeeping: every ω_j in crossing order, the strictly increasing
/// jump instants t*_q that remain after dropping `+∞` and collapsing
/// duplicates, and for each t*_q the crossing index j it belongs to (when
/// several ω_j coincide, the largest j wins: the argmin jumps past all of
/// them at once).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpTimes {
    pub omegas: Vec<Omega>,
    pub tstars: Vec<Rat>,
    pub sources: Vec<usize>,
}

impl JumpTimes {
    /// Number of actual jumps Q.
    pub fn count(&self) -> usize {
        self.tstars.len()
    }
}

/// The argmin rule as a left-to-right partition of the time axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgminPolicy {
    pieces: Vec<(Span, Segment)>,
    jumps: JumpTimes,
    x1: Rat,
    x2: Rat,
}

impl ArgminPolicy {
    pub fn pieces(&self) -> &[(Span, Segment)] {
        &self.pieces
    }

    pub fn jumps(&self) -> &JumpTimes {
        &self.jumps
    }

    /// The window `[x₁, x₂]` every value lies in.
    pub fn bounds(&self) -> (&Rat, &Rat) {
        (&self.x1, &self.x2)
    }

    /// The optimal value at `t`.
    pub fn eval(&self, t: &Rat) -> Rat {
        let (_, seg) = self
            .pieces
            .iter()
            .find(|(span, _)| span.contains(t))
            .expect("policy pieces partition the axis");
        seg.value_at(t)
    }
}

/// Lower bound of two span starts (`None` = unbounded below).
fn later_start(a: &Option<Rat>, b: &Option<Rat>) -> Option<Rat> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.clone().max(y.clone())),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

/// Upper bound of two span ends (`None` = unbounded above).
fn earlier_end(a: &Option<Rat>, b: &Option<Rat>) -> Option<Rat> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.clone().min(y.clone())),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

/// Computes the full rule for minimizing `f(x + t) + g(x)` over `x ∈ [x₁, x₂]`.
pub fn argmin_policy(f: &PwlFunction, g: &DeviationCost) -> ArgminPolicy {
    if f.slopes().contains(g.nu()) {
        // The jump-instant formulas divide by slope gaps that vanish on tied
        // cells; build the rule from the window geometry instead.
        return crate::envelope::envelope_policy(f, g);
    }
    let sets = crossing_sets(f, g.nu());
    let omegas: Vec<Omega> = (1..=sets.b.len()).map(|j| omega(f, g, &sets, j)).collect();
    debug_assert!(
        sets.b.is_empty() || omegas.last().is_some_and(Omega::is_finite),
        "the final crossing always produces a finite jump instant"
    );

    let mut tstars: Vec<Rat> = Vec::new();
    let mut sources: Vec<usize> = Vec::new();
    for (j0, w) in omegas.iter().enumerate() {
        if let Omega::Finite(t) = w {
            if let Some(last) = tstars.last() {
                debug_assert!(last <= t, "finite jump instants are nondecreasing in j");
                if last == t {
                    *sources.last_mut().expect("parallel to tstars") = j0 + 1;
                    continue;
                }
            }
            tstars.push(t.clone());
            sources.push(j0 + 1);
        }
    }

    // Blocks of the rule: window of validity plus the upward crossing a'
    // whose shape is followed (`None`: hold x₂ throughout, the case with no
    // upward crossing left of the window).
    let mut blocks: Vec<(Option<Rat>, Option<Rat>, Option<usize>)> = Vec::new();
    let q_count = tstars.len();
    let first_end = tstars.first().cloned();
    blocks.push((None, first_end, sets.a.first().copied()));
    for q in 1..=q_count {
        let start = Some(tstars[q - 1].clone());
        let end = if q < q_count { Some(tstars[q].clone()) } else { None };
        let source = sources[q - 1];
        let a_prime = (source < sets.a.len()).then(|| sets.a[source]);
        blocks.push((start, end, a_prime));
    }

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
    for (start, end, a_prime) in &blocks {
        match a_prime {
            None => push(Span::new(start.clone(), end.clone()), Segment::Const(g.x2().clone())),
            Some(ai) => {
                let anchor = &f.breakpoints()[ai - 1];
                let plateau_end = anchor - g.x2();
                let descent_end = anchor - g.x1();
                push(
                    Span::new(start.clone(), earlier_end(end, &Some(plateau_end.clone()))),
                    Segment::Const(g.x2().clone()),
                );
                push(
                    Span::new(
                        later_start(start, &Some(plateau_end)),
                        earlier_end(end, &Some(descent_end.clone())),
                    ),
                    Segment::Descending { intercept: anchor.clone() },
                );
                push(
                    Span::new(later_start(start, &Some(descent_end)), end.clone()),
                    Segment::Const(g.x1().clone()),
                );
            }
        }
    }

    let policy = ArgminPolicy {
        pieces,
        jumps: JumpTimes { omegas, tstars, sources },
        x1: g.x1().clone(),
        x2: g.x2().clone(),
    };
    debug_assert_policy(&policy);
    policy
}

impl ArgminPolicy {
    pub(crate) fn from_parts(
        pieces: Vec<(Span, Segment)>,
        jumps: JumpTimes,
        x1: Rat,
        x2: Rat,
    ) -> ArgminPolicy {
        let policy = ArgminPolicy { pieces, jumps, x1, x2 };
        debug_assert_policy(&policy);
        policy
    }
}

fn debug_assert_policy(policy: &ArgminPolicy) {
    let pieces = policy.pieces();
    debug_assert!(pieces.first().is_some_and(|(s, _)| s.start.is_none()));
    debug_assert!(pieces.last().is_some_and(|(s, _)| s.end.is_none()));
    for pair in pieces.windows(2) {
        debug_assert_eq!(pair[0].0.end, pair[1].0.start, "pieces must tile the axis");
    }
    // Each jump lands strictly upward; all other boundaries are continuous.
    for pair in pieces.windows(2) {
        let boundary = pair[0].0.end.as_ref().expect("interior boundary");
        let before = pair[0].1.value_at(boundary);
        let after = pair[1].1.value_at(boundary);
        if policy.jumps.tstars.contains(boundary) {
            debug_assert!(after > before, "jump at {boundary} must go upward");
        } else {
            debug_assert_eq!(before, after, "non-jump boundary at {boundary} must be continuous");
        }
    }
}
