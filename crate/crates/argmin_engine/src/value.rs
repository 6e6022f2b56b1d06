//! The attained minimum `h(t) = min_x f(x + t) + g(x)` in closed form.

use pwl_core::{DeviationCost, PwlFunction, Rat, rat};

use crate::policy::{ArgminPolicy, Segment, argmin_policy};

/// Assembles `h` from the policy regimes.
///
/// On a constant regime `x° = v` the value is `f(v + t) + g(v)`, so `h`
/// inherits the slopes of `f` displaced by `v` (plus the constant `g(v)`:
/// zero at the nominal `x₂`, the full compression cost at `x₁`). On a
/// descending regime `x° + t` is pinned at a breakpoint, so only the
/// deviation term moves and `h` climbs with slope exactly `ν`. `h` is
/// continuous — the minimum of a continuous family — which determines it
/// from its initial value and slopes alone.
///
/// The `policy` must come from [`argmin_policy`] on the same `(f, g)`;
/// debug builds verify the assembly against the direct composition
/// `f(x°(t) + t) + g(x°(t))` at every regime boundary and midpoint.
pub fn value_function(f: &PwlFunction, g: &DeviationCost, policy: &ArgminPolicy) -> PwlFunction {
    let mut events: Vec<(Rat, Rat)> = Vec::new();
    for (span, seg) in policy.pieces() {
        match seg {
            Segment::Const(v) => {
                if let Some(start) = &span.start {
                    events.push((start.clone(), f.slope_right_of(&(v + start))));
                }
                for (idx, bp) in f.breakpoints().iter().enumerate() {
                    let t = bp - v;
                    let past_start = span.start.as_ref().is_none_or(|s| *s < t);
                    let before_end = span.end.as_ref().is_none_or(|e| t < *e);
                    if past_start && before_end {
                        events.push((t, f.slopes()[idx].clone()));
                    }
                }
            }
            Segment::Descending { .. } => {
                let start = span.start.as_ref().expect("descents never extend to -inf");
                events.push((start.clone(), g.nu().clone()));
            }
        }
    }
    let h = PwlFunction::new(f.initial_value().clone(), events)
        .expect("policy pieces are ordered and f's slopes are nonnegative");
    debug_assert_composition(f, g, policy, &h);
    h
}

/// Policy and value function in one call.
pub fn solve_window(f: &PwlFunction, g: &DeviationCost) -> (ArgminPolicy, PwlFunction) {
    let policy = argmin_policy(f, g);
    let h = value_function(f, g, &policy);
    (policy, h)
}

fn debug_assert_composition(f: &PwlFunction, g: &DeviationCost, policy: &ArgminPolicy, h: &PwlFunction) {
    if !cfg!(debug_assertions) {
        return;
    }
    let mut probes: Vec<Rat> = Vec::new();
    for (span, _) in policy.pieces() {
        match (&span.start, &span.end) {
            (Some(s), Some(e)) => {
                probes.push(s.clone());
                probes.push((s + e) / rat(2));
            }
            (Some(s), None) => {
                probes.push(s.clone());
                probes.push(s + rat(1));
            }
            (None, Some(e)) => probes.push(e - rat(1)),
            (None, None) => probes.push(rat(0)),
        }
    }
    for t in probes {
        let x = policy.eval(&t);
        let direct = f.eval(&(&x + &t)) + g.eval(&x);
        debug_assert_eq!(
            h.eval(&t),
            direct,
            "assembled value function disagrees with composition at t = {t}"
        );
    }
}
