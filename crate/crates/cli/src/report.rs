//! Rendering of exact values for terminal output.
//!
//! Everything prints reduced fractions; the default table format adds the
//! repeating-decimal reading in parentheses so `40/3` shows as
//! `40/3 (13.3̄)`. No float ever enters the output path.

use argmin_engine::{Omega, Segment};
use dp_scheduler::render_segment;
use pwl_core::{overline_decimal, PwlFunction, Rat, Span};

use crate::Format;

pub fn number(r: &Rat, format: Format) -> String {
    let frac = r.to_string();
    if format != Format::Table {
        return frac;
    }
    let dec = overline_decimal(r);
    if dec == frac { frac } else { format!("{frac} ({dec})") }
}

pub fn omega(o: &Omega, format: Format) -> String {
    match o {
        Omega::Finite(t) => number(t, format),
        Omega::PlusInf => "+inf".to_string(),
    }
}

/// One `x = <segment> on <span>` row per policy piece.
pub fn segment_table(rows: &[(Span, Segment)]) -> String {
    rows.iter()
        .map(|(span, seg)| format!("  {:<8} on {span}\n", render_segment(seg)))
        .collect()
}

/// One row per linear piece: its span, slope, and exact starting level.
pub fn function_table(f: &PwlFunction, format: Format) -> String {
    let bps = f.breakpoints();
    let mut out = format!(
        "  {} on (-inf, {})\n",
        number(f.initial_value(), format),
        bps.first().map_or("+inf".to_string(), ToString::to_string),
    );
    for (i, bp) in bps.iter().enumerate() {
        let span = Span::new(Some(bp.clone()), bps.get(i + 1).cloned());
        out.push_str(&format!(
            "  slope {} from {} on {span}\n",
            number(&f.slopes()[i], format),
            number(&f.eval(bp), format),
        ));
    }
    out
}
