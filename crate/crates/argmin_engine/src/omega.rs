//! Computation of the jump instants ω_j: the times at which the windowed
//! argmin leaves the plateau left of the `j`-th downward slope crossing and
//! jumps up past it.
//!
//! The computation walks the window `[τ, τ + (x₂ − x₁)]` rightward across the
//! breakpoint grid of `f`, keeping `d` = the accumulated cost advantage of the
//! left window edge over the right one (clamped at zero whenever the running
//! minimum resets). Three phases:
//!
//! * **Section A** (initialization): place the window so its right edge sits
//!   on the crossing breakpoint `γ_{b_j}`, locate the grid cells `h`, `k`
//!   containing the edges, and seed `d`.
//! * **Section B** (first loop): advance the window edge-event by edge-event
//!   while the right edge stays left of the next upward crossing `a_{j+1}`.
//!   When the drift `δ` of the advantage turns nonpositive, one of four
//!   closed-form expressions yields ω_j.
//! * **Section C** (second loop): the right edge passed `a_{j+1}` first;
//!   continue advancing the left edge only. Either a final scan `φ` proves
//!   the minimum never leaves the left region (ω_j = +∞) or the crossing
//!   time is read off as `τ − x₁`.
//!
//! # Trace format
//!
//! [`omega_traced`] records one [`TraceRow`] per executed assignment,
//! rendered as `row=<n> var=<name> value=<rational>`. Row numbers identify
//! steps of the walk, numbered continuously across the three sections with
//! every structural line counted (loop heads, branch keywords, and `end`
//! markers occupy numbers but never emit). The emitting rows:
//!
//! | rows | section | assignments |
//! |------|---------|-------------|
//! | 2, 3, 5, 7 | A | `h`, `i`, `k`, augmented `a_next` |
//! | 12–14, 17, 20, 21 | A | `tau`, `theta`, seed `d` (14) and its accumulation (17), `lambda`, `xi` |
//! | 23, 25, 28 | B | `psi`, `lambda`, `xi` |
//! | 30, 33, 37, 39, 41 | B | `delta`: seed, accumulation, and the three right-edge corrections |
//! | 44, 45, 48, 50, 53, 55 | B | exit test: `a_0`, `r`, `chi` seed/accumulation, `m` seed/min |
//! | 59, 61, 64, 68 | B | the four `omega` expressions |
//! | 72–76 | B | window advance: `h`, `i`, `tau`, `theta`, `d` |
//! | 80, 81, 83, 86, 90, 92 | C | `psi`, `lambda`, `delta` variants |
//! | 94–98, 101, 103 | C | exit path: `tau`, `theta`, `k`, `r`, `phi` seed and accumulation |
//! | 106, 109, 112 | C | `omega = +inf`, scan advance `r`, `omega = tau − x1` |
//! | 115–117 | C | left-edge advance: `h`, `tau`, `d` |
//!
//! Loop iterations re-emit the same row numbers; the sequence of rows is the
//! execution history.
//!
//! One listing quirk: the row-59 branch (`m ≤ 0`) assigns ω_j without a
//! following exit marker, unlike its three siblings. Falling through would
//! re-enter the loop with unchanged state and never terminate, so the only
//! consistent reading is to exit there too; [`TracedOmega::ambiguous_exit`]
//! flags runs that end through that branch.

use std::fmt;

use num_traits::Zero;
use pwl_core::{DeviationCost, PwlFunction, Rat};

use crate::crossing::CrossingSets;

/// A jump instant: finite, or `+∞` when the argmin never jumps at this
/// crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Omega {
    Finite(Rat),
    PlusInf,
}

impl Omega {
    pub fn is_finite(&self) -> bool {
        matches!(self, Omega::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            Omega::Finite(t) => Some(t),
            Omega::PlusInf => None,
        }
    }
}

impl fmt::Display for Omega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Omega::Finite(t) => write!(f, "{t}"),
            Omega::PlusInf => write!(f, "+inf"),
        }
    }
}

/// One recorded assignment of the walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRow {
    pub row: u32,
    pub var: &'static str,
    pub value: String,
}

impl fmt::Display for TraceRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row={} var={} value={}", self.row, self.var, self.value)
    }
}

/// A jump instant together with its execution trace.
#[derive(Debug, Clone)]
pub struct TracedOmega {
    pub omega: Omega,
    pub rows: Vec<TraceRow>,
    /// The run exited through the row-59 branch whose exit marker the
    /// listing omits (see module docs).
    pub ambiguous_exit: bool,
}

/// Jump instant ω_j for the `j`-th (1-based) downward crossing in `sets`.
pub fn omega(f: &PwlFunction, g: &DeviationCost, sets: &CrossingSets, j: usize) -> Omega {
    omega_traced(f, g, sets, j).omega
}

fn emit(rows: &mut Vec<TraceRow>, row: u32, var: &'static str, value: impl fmt::Display) {
    rows.push(TraceRow { row, var, value: value.to_string() });
}

fn zero_max(v: Rat) -> Rat {
    if v < Rat::zero() { Rat::zero() } else { v }
}

/// Same as [`omega`], recording every assignment.
pub fn omega_traced(f: &PwlFunction, g: &DeviationCost, sets: &CrossingSets, j: usize) -> TracedOmega {
    assert!(
        (1..=sets.b.len()).contains(&j),
        "jump index {j} outside 1..={}",
        sets.b.len()
    );
    let m_count = f.piece_count();
    let bps = f.breakpoints();
    let slopes = f.slopes();
    let gamma = |i: usize| -> &Rat { &bps[i - 1] };
    let mu_t = |p: usize| -> Rat {
        if p == 0 { -g.nu().clone() } else { &slopes[p - 1] - g.nu() }
    };
    // Σ over p in from..to of μ̃_p (γ_{p+1} − γ_p); requires to ≤ M.
    let seg_sum = |from: usize, to: usize| -> Rat {
        let mut s = Rat::zero();
        for p in from..to {
            s += mu_t(p) * (gamma(p + 1) - gamma(p));
        }
        s
    };
    let width = g.width();
    let bj = sets.b[j - 1];
    let a_next = if j == sets.b.len() && sets.a.len() == sets.b.len() {
        m_count + 1 // the walk has no upward crossing to its right
    } else {
        sets.a[j]
    };

    let mut rows = Vec::new();
    let mut ambiguous = false;

    // Section A: window right edge on γ_{b_j}, left edge in cell h.
    let mut tau = gamma(bj) - &width;
    let mut h = bps.partition_point(|g| *g <= tau);
    emit(&mut rows, 2, "h", h);
    let mut i = bj;
    emit(&mut rows, 3, "i", i);
    let k = bps.partition_point(|g| *g < gamma(bj) + &width);
    emit(&mut rows, 5, "k", k);
    if a_next == m_count + 1 {
        emit(&mut rows, 7, "a_next", a_next);
    }
    emit(&mut rows, 12, "tau", &tau);
    let mut theta = gamma(bj).clone();
    emit(&mut rows, 13, "theta", &theta);
    let mut d = zero_max(mu_t(h) * (gamma(h + 1) - &tau));
    emit(&mut rows, 14, "d", &d);
    if h + 1 < bj {
        for p in (h + 1)..bj {
            d = zero_max(d + mu_t(p) * (gamma(p + 1) - gamma(p)));
            emit(&mut rows, 17, "d", &d);
        }
    }
    let mut lambda = h;
    emit(&mut rows, 20, "lambda", lambda);
    let mut xi = i;
    emit(&mut rows, 21, "xi", xi);

    // Section B: advance both edges until the right edge reaches a_{j+1}.
    while h < bj && i < a_next {
        let cand_h = gamma(h + 1) - &tau;
        let cand_i = (i + 1 <= m_count).then(|| gamma(i + 1) - &theta);
        let (h_fires, i_fires, psi) = match &cand_i {
            None => (true, false, cand_h.clone()),
            Some(ci) => (&cand_h <= ci, ci <= &cand_h, cand_h.clone().min(ci.clone())),
        };
        emit(&mut rows, 23, "psi", &psi);
        if h_fires {
            lambda = h + 1;
            emit(&mut rows, 25, "lambda", lambda);
        }
        if i_fires {
            xi = i + 1;
            emit(&mut rows, 28, "xi", xi);
        }

        let mut delta = if lambda + 1 > m_count {
            Rat::zero() // γ_{λ+1} = +∞ with μ̃_λ < 0: the clamped term vanishes
        } else {
            zero_max(mu_t(lambda) * (gamma(lambda + 1) - (&tau + &psi)))
        };
        emit(&mut rows, 30, "delta", &delta);
        if lambda + 1 < bj {
            for p in (lambda + 1)..bj {
                delta = zero_max(delta + mu_t(p) * (gamma(p + 1) - gamma(p)));
                emit(&mut rows, 33, "delta", &delta);
            }
        }
        if xi == bj {
            delta += mu_t(xi) * (&theta + &psi - gamma(xi));
            emit(&mut rows, 37, "delta", &delta);
        } else if xi == a_next {
            debug_assert!(xi <= m_count, "augmented a_next is never reached by xi");
            delta += seg_sum(bj, xi);
            emit(&mut rows, 39, "delta", &delta);
        } else {
            delta += seg_sum(bj, xi) + mu_t(xi) * (&theta + &psi - gamma(xi));
            emit(&mut rows, 41, "delta", &delta);
        }

        if delta <= Rat::zero() {
            emit(&mut rows, 44, "a_0", 0);
            let r = sets.a.partition_point(|ai| *ai <= h) + 1;
            emit(&mut rows, 45, "r", r);
            let mu_h = mu_t(h);
            let mu_i = mu_t(i);
            let omega = if r <= j {
                // m: worst local-minimum clearance between here and window j.
                let mut m_val: Option<Rat> = None;
                for q in r..=j {
                    let aq = sets.a[q - 1];
                    let mut chi = &mu_h * (gamma(h + 1) - &tau);
                    emit(&mut rows, 48, "chi", &chi);
                    if h + 1 < aq {
                        chi += seg_sum(h + 1, aq);
                        emit(&mut rows, 50, "chi", &chi);
                    }
                    m_val = Some(match m_val {
                        None => {
                            emit(&mut rows, 53, "m", &chi);
                            chi
                        }
                        Some(prev) => {
                            let next = prev.min(chi);
                            emit(&mut rows, 55, "m", &next);
                            next
                        }
                    });
                }
                let m_val = m_val.expect("r <= j yields at least one term");
                if m_val <= Rat::zero() {
                    let w = &tau - g.x1() - &d / &mu_i;
                    emit(&mut rows, 59, "omega", &w);
                    ambiguous = true;
                    w
                } else if -((&d - &m_val) / &mu_i) <= &m_val / &mu_h {
                    let w = &tau - g.x1() + &d / (&mu_h - &mu_i);
                    emit(&mut rows, 61, "omega", &w);
                    w
                } else {
                    let w = &tau - g.x1() - (&d - &m_val) / &mu_i;
                    emit(&mut rows, 64, "omega", &w);
                    w
                }
            } else {
                let w = &tau - g.x1() + &d / (&mu_h - &mu_i);
                emit(&mut rows, 68, "omega", &w);
                w
            };
            return TracedOmega { omega: Omega::Finite(omega), rows, ambiguous_exit: ambiguous };
        }
        h = lambda;
        emit(&mut rows, 72, "h", h);
        i = xi;
        emit(&mut rows, 73, "i", i);
        tau += &psi;
        emit(&mut rows, 74, "tau", &tau);
        theta += &psi;
        emit(&mut rows, 75, "theta", &theta);
        d = delta;
        emit(&mut rows, 76, "d", &d);
    }

    // Section C: the right edge sits at or past a_{j+1}; only the left edge moves.
    while h < bj {
        let psi = gamma(h + 1) - &tau;
        emit(&mut rows, 80, "psi", &psi);
        lambda = h + 1;
        emit(&mut rows, 81, "lambda", lambda);
        let mut delta;
        if lambda < bj {
            delta = zero_max(mu_t(lambda) * (gamma(lambda + 1) - (&tau + &psi)));
            emit(&mut rows, 83, "delta", &delta);
            if lambda + 1 < bj {
                for p in (lambda + 1)..bj {
                    delta = zero_max(delta + mu_t(p) * (gamma(p + 1) - gamma(p)));
                    emit(&mut rows, 86, "delta", &delta);
                }
            }
        } else {
            delta = Rat::zero();
            emit(&mut rows, 90, "delta", &delta);
        }
        // With the augmented a_{j+1} = M+1 the correction's final term is
        // μ̃_M (γ_{M+1} − γ_M) = −∞, so the exit branch below is forced.
        let diverges = a_next == m_count + 1;
        if !diverges {
            delta += seg_sum(bj, a_next);
            emit(&mut rows, 92, "delta", &delta);
        }

        if diverges || delta <= Rat::zero() {
            if !d.is_zero() {
                tau += &d / mu_t(h);
            }
            emit(&mut rows, 94, "tau", &tau);
            theta = &tau + &width;
            emit(&mut rows, 95, "theta", &theta);
            let k = bps.partition_point(|g| *g < theta);
            emit(&mut rows, 96, "k", k);
            let mut r = a_next;
            emit(&mut rows, 97, "r", r);
            let mut phi = Rat::zero();
            emit(&mut rows, 98, "phi", &phi);
            while r <= k {
                if r < k {
                    phi += mu_t(r) * (gamma(r + 1) - gamma(r));
                    emit(&mut rows, 101, "phi", &phi);
                } else {
                    phi += mu_t(r) * (&theta - gamma(r));
                    emit(&mut rows, 103, "phi", &phi);
                }
                if phi < Rat::zero() {
                    emit(&mut rows, 106, "omega", "+inf");
                    return TracedOmega { omega: Omega::PlusInf, rows, ambiguous_exit: ambiguous };
                }
                r += 1;
                emit(&mut rows, 109, "r", r);
            }
            let w = &tau - g.x1();
            emit(&mut rows, 112, "omega", &w);
            return TracedOmega { omega: Omega::Finite(w), rows, ambiguous_exit: ambiguous };
        }
        h = lambda;
        emit(&mut rows, 115, "h", h);
        tau += &psi;
        emit(&mut rows, 116, "tau", &tau);
        d = delta;
        emit(&mut rows, 117, "d", &d);
    }

    unreachable!("window walk ended without assigning a jump instant")
}
