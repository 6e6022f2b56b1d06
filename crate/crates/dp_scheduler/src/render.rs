use std::fmt::Write as _;

use argmin_engine::Segment;
use num_traits::Zero;
use pwl_core::{parse_rational, Rat, Span};

use crate::dp::{Solution, TieBreak};

/// Compact text for a strategy segment: `8`, `-t+18`, `-t-13`, or `-t`.
pub fn render_segment(seg: &Segment) -> String {
    match seg {
        Segment::Const(v) => v.to_string(),
        Segment::Descending { intercept } => {
            if intercept.is_zero() {
                "-t".to_string()
            } else if *intercept > Rat::zero() {
                format!("-t+{intercept}")
            } else {
                format!("-t{intercept}")
            }
        }
    }
}

pub fn parse_segment(text: &str) -> Result<Segment, String> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("-t") {
        let intercept = if rest.is_empty() {
            Rat::zero()
        } else {
            let body = rest.strip_prefix('+').unwrap_or(rest);
            parse_rational(body).map_err(|e| e.to_string())?
        };
        Ok(Segment::Descending { intercept })
    } else {
        Ok(Segment::Const(
            parse_rational(text).map_err(|e| e.to_string())?,
        ))
    }
}

/// Parses the display form of a half-open span: `[10, 13)`, `(-inf, 16)`,
/// `[46/3, +inf)`.
pub fn parse_span(text: &str) -> Result<Span, String> {
    let text = text.trim();
    let inner = text
        .strip_suffix(')')
        .and_then(|t| t.strip_prefix('[').or_else(|| t.strip_prefix('(')))
        .ok_or_else(|| format!("span {text} must be bracketed"))?;
    let (lo, hi) = inner
        .split_once(',')
        .ok_or_else(|| format!("span {text} needs two endpoints"))?;
    let parse_end = |token: &str| -> Result<Option<Rat>, String> {
        let token = token.trim();
        if token == "-inf" || token == "+inf" || token == "inf" {
            Ok(None)
        } else {
            parse_rational(token).map(Some).map_err(|e| e.to_string())
        }
    };
    Ok(Span::new(parse_end(lo)?, parse_end(hi)?))
}

/// Full text export of a solution: per state, the cost-to-go, the conditioned
/// cost-to-go and processing-time rule per class, and the resolved class,
/// tie, and processing-time tables (lowest-class tie-breaking).
pub fn write_solution(sol: &Solution) -> String {
    let mut out = String::new();
    for st in sol.states() {
        write!(out, "state").unwrap();
        for done in &st.state.completed {
            write!(out, " {done}").unwrap();
        }
        writeln!(out, " {}", st.state.last_class).unwrap();
        writeln!(out, "J {}", st.cost_to_go).unwrap();
        for (c, cond) in st.per_class.iter().enumerate() {
            let Some(cond) = cond else { continue };
            writeln!(out, "cond {} {}", c + 1, cond.cost_to_go).unwrap();
            for (span, seg) in cond.pt_policy.pieces() {
                writeln!(out, "pt {} {} | {span}", c + 1, render_segment(seg)).unwrap();
            }
        }
        for (span, class) in st.class_strategy(TieBreak::LowestClass) {
            writeln!(out, "delta {class} | {span}").unwrap();
        }
        for (span, set) in st.tie_intervals() {
            write!(out, "tie").unwrap();
            for class in set {
                write!(out, " {class}").unwrap();
            }
            writeln!(out, " | {span}").unwrap();
        }
        for (span, seg) in st.pt_strategy(TieBreak::LowestClass) {
            writeln!(out, "tau {} | {span}", render_segment(&seg)).unwrap();
        }
        writeln!(out).unwrap();
    }
    out
}
