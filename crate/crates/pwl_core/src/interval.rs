//! Half-open intervals of the real line.

use std::fmt;

use crate::Rat;

/// A half-open interval `[start, end)`; a `None` bound is unbounded.
///
/// All strategy tables partition the time axis into these, with the convention
/// that a point where two regimes meet belongs to the regime on its right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub start: Option<Rat>,
    pub end: Option<Rat>,
}

impl Span {
    pub fn new(start: Option<Rat>, end: Option<Rat>) -> Self {
        Span { start, end }
    }

    /// The whole real line.
    pub fn all() -> Self {
        Span { start: None, end: None }
    }

    pub fn bounded(start: Rat, end: Rat) -> Self {
        Span { start: Some(start), end: Some(end) }
    }

    /// True when the interval contains no points (both bounds finite and
    /// `start >= end`).
    pub fn is_empty(&self) -> bool {
        match (&self.start, &self.end) {
            (Some(s), Some(e)) => s >= e,
            _ => false,
        }
    }

    pub fn contains(&self, t: &Rat) -> bool {
        self.start.as_ref().is_none_or(|s| s <= t) && self.end.as_ref().is_none_or(|e| t < e)
    }

    /// Overlap of two spans, possibly empty.
    pub fn intersect(&self, other: &Span) -> Span {
        let start = match (&self.start, &other.start) {
            (Some(a), Some(b)) => Some(a.max(b).clone()),
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        let end = match (&self.end, &other.end) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        Span { start, end }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.start {
            Some(s) => write!(f, "[{s}, ")?,
            None => write!(f, "(-inf, ")?,
        }
        match &self.end {
            Some(e) => write!(f, "{e})"),
            None => write!(f, "+inf)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn membership_is_half_open() {
        let s = Span::bounded(rat(10), rat(13));
        assert!(s.contains(&rat(10)));
        assert!(s.contains(&rat(12)));
        assert!(!s.contains(&rat(13)));
        assert!(Span::all().contains(&rat(-1000)));
    }

    #[test]
    fn intersection_clips_both_ends() {
        let a = Span::new(Some(rat(2)), None);
        let b = Span::new(None, Some(rat(7)));
        assert_eq!(a.intersect(&b), Span::bounded(rat(2), rat(7)));
        assert_eq!(Span::all().intersect(&a), a);
        assert!(Span::bounded(rat(0), rat(2)).intersect(&a).is_empty());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Span::bounded(rat(10), rat(13)).to_string(), "[10, 13)");
        assert_eq!(Span::new(None, Some(rat(16))).to_string(), "(-inf, 16)");
        assert_eq!(Span::new(Some(crate::ratio(46, 3)), None).to_string(), "[46/3, +inf)");
    }
}
