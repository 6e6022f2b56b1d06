//! Continuous nondecreasing piecewise-linear functions in canonical form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::interval::Span;
use crate::rational::parse_rational;
use crate::{PwlError, Rat};

/// A continuous nondecreasing piecewise-linear function.
///
/// The function equals `initial_value` on `(-inf, γ₁)` and grows with slope
/// `μᵢ` on `[γᵢ, γᵢ₊₁)` (the last piece extends to `+inf`). Canonical form is
/// maintained by every constructor and operation:
///
/// * breakpoints strictly increasing,
/// * slopes nonnegative,
/// * no piece continues the slope before it (in particular `μ₁ ≠ 0`),
/// * `M = 0` encodes a constant.
///
/// Because the form is canonical, `==` decides pointwise equality, which is
/// what lets golden tests compare whole functions exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PwlFunction {
    initial_value: Rat,
    breakpoints: Vec<Rat>,
    slopes: Vec<Rat>,
}

/// Which argument of [`PwlFunction::min_of`] attains the minimum on a span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    First,
    Second,
    Tie,
}

/// Pointwise minimum together with the regions where each argument wins.
///
/// The spans partition the time axis: a point where the two functions are
/// equal belongs to the span on its right, and `Tie` spans are maximal
/// positive-length (or unbounded) regions of exact coincidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinResult {
    pub func: PwlFunction,
    pub winners: Vec<(Span, Winner)>,
}

impl PwlFunction {
    /// The constant function `x ↦ value`.
    pub fn constant(value: Rat) -> Self {
        PwlFunction { initial_value: value, breakpoints: Vec::new(), slopes: Vec::new() }
    }

    /// The zero function.
    pub fn zero() -> Self {
        Self::constant(Rat::zero())
    }

    /// Builds a function from `(breakpoint, slope)` pieces.
    ///
    /// Breakpoints must be nondecreasing and slopes nonnegative; zero-length
    /// pieces (repeated breakpoints) are dropped keeping the last, and pieces
    /// that merely continue the preceding slope are merged away.
    pub fn new(
        initial_value: Rat,
        pieces: impl IntoIterator<Item = (Rat, Rat)>,
    ) -> Result<Self, PwlError> {
        let pieces: Vec<(Rat, Rat)> = pieces.into_iter().collect();
        for w in pieces.windows(2) {
            if w[1].0 < w[0].0 {
                return Err(PwlError::UnorderedBreakpoints {
                    prev: w[0].0.clone(),
                    next: w[1].0.clone(),
                });
            }
        }
        if let Some((at, slope)) = pieces.iter().find(|(_, m)| m < &Rat::zero()) {
            return Err(PwlError::NegativeSlope { at: at.clone(), slope: slope.clone() });
        }
        Ok(Self::assemble(initial_value, pieces))
    }

    /// `x ↦ slope·max(x − threshold, 0)`, the tardiness-cost building block.
    pub fn ramp(threshold: Rat, slope: Rat) -> Result<Self, PwlError> {
        if slope <= Rat::zero() {
            return Err(PwlError::RampSlope(slope));
        }
        Ok(PwlFunction { initial_value: Rat::zero(), breakpoints: vec![threshold], slopes: vec![slope] })
    }

    /// Canonicalizes pieces that are already ordered and nonnegative.
    fn assemble(initial_value: Rat, pieces: Vec<(Rat, Rat)>) -> Self {
        let mut breakpoints = Vec::with_capacity(pieces.len());
        let mut slopes: Vec<Rat> = Vec::with_capacity(pieces.len());
        let mut iter = pieces.into_iter().peekable();
        while let Some((g, m)) = iter.next() {
            if iter.peek().is_some_and(|(g2, _)| *g2 == g) {
                continue; // zero-length piece: the later entry supersedes it
            }
            if slopes.last().map_or_else(|| m.is_zero(), |prev| *prev == m) {
                continue; // continues the running slope: not a real breakpoint
            }
            breakpoints.push(g);
            slopes.push(m);
        }
        PwlFunction { initial_value, breakpoints, slopes }
    }

    pub fn initial_value(&self) -> &Rat {
        &self.initial_value
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[Rat] {
        &self.slopes
    }

    /// Number of pieces `M` (0 for constants).
    pub fn piece_count(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn is_constant(&self) -> bool {
        self.breakpoints.is_empty()
    }

    /// Slope of the last piece (`μ_M`, or 0 for constants).
    pub fn final_slope(&self) -> Rat {
        self.slopes.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// Index of the piece whose span `[γᵢ, γᵢ₊₁)` contains `x`, or `None`
    /// before the first breakpoint.
    fn piece_at(&self, x: &Rat) -> Option<usize> {
        self.breakpoints.partition_point(|g| g <= x).checked_sub(1)
    }

    /// Slope immediately to the right of `x` (0 before the first breakpoint).
    pub fn slope_right_of(&self, x: &Rat) -> Rat {
        self.piece_at(x).map_or_else(Rat::zero, |i| self.slopes[i].clone())
    }

    /// Exact value at `x`.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut v = self.initial_value.clone();
        for i in 0..self.breakpoints.len() {
            let start = &self.breakpoints[i];
            if x <= start {
                break;
            }
            let end = self.breakpoints.get(i + 1).filter(|e| *e < x).unwrap_or(x);
            v += &self.slopes[i] * (end - start);
        }
        v
    }

    /// `x ↦ f(x + t)`: same shape with every breakpoint moved to `γᵢ − t`.
    pub fn shift(&self, t: &Rat) -> Self {
        PwlFunction {
            initial_value: self.initial_value.clone(),
            breakpoints: self.breakpoints.iter().map(|g| g - t).collect(),
            slopes: self.slopes.clone(),
        }
    }

    /// `x ↦ f(x) + c`.
    pub fn add_constant(&self, c: &Rat) -> Self {
        PwlFunction {
            initial_value: &self.initial_value + c,
            breakpoints: self.breakpoints.clone(),
            slopes: self.slopes.clone(),
        }
    }

    /// Pointwise sum; closed in the class since slopes add.
    pub fn sum(&self, other: &Self) -> Self {
        let mut events: Vec<Rat> =
            self.breakpoints.iter().chain(&other.breakpoints).cloned().collect();
        events.sort();
        events.dedup();
        let pieces = events
            .into_iter()
            .map(|g| {
                let m = self.slope_right_of(&g) + other.slope_right_of(&g);
                (g, m)
            })
            .collect();
        Self::assemble(&self.initial_value + &other.initial_value, pieces)
    }

    /// Pointwise minimum with exact crossing points and winner regions.
    ///
    /// Closed in the class: on every span the minimum follows one argument, so
    /// slopes stay nonnegative and the leading slope stays zero.
    pub fn min_of(&self, other: &Self) -> MinResult {
        let mut events: Vec<Rat> =
            self.breakpoints.iter().chain(&other.breakpoints).cloned().collect();
        events.sort();
        events.dedup();

        // Sub-intervals left to right: (start, winner, slope of the minimum).
        let mut labeled: Vec<(Option<Rat>, Winner, Rat)> = Vec::new();
        labeled.push((
            None,
            match self.initial_value.cmp(&other.initial_value) {
                Ordering::Less => Winner::First,
                Ordering::Greater => Winner::Second,
                Ordering::Equal => Winner::Tie,
            },
            Rat::zero(),
        ));

        for (idx, e) in events.iter().enumerate() {
            let next = events.get(idx + 1);
            let s1 = self.slope_right_of(e);
            let s2 = other.slope_right_of(e);
            let d0 = self.eval(e) - other.eval(e);
            let ds = &s1 - &s2;

            if d0.is_zero() && ds.is_zero() {
                labeled.push((Some(e.clone()), Winner::Tie, s1));
                continue;
            }

            // Winner on the open interval just right of `e`; a lone equality
            // at `e` itself belongs to this region (right absorption).
            let leading = if d0.is_zero() { &ds } else { &d0 };
            let (w0, m0) =
                if leading < &Rat::zero() { (Winner::First, s1.clone()) } else { (Winner::Second, s2.clone()) };
            labeled.push((Some(e.clone()), w0, m0));

            // One interior crossing is possible when value and trend disagree.
            if !d0.is_zero() && !ds.is_zero() && (d0 < Rat::zero()) != (ds < Rat::zero()) {
                let x_star = e - &d0 / &ds;
                if next.is_none_or(|n| x_star < *n) {
                    debug_assert!(x_star > *e);
                    let (w1, m1) =
                        if ds < Rat::zero() { (Winner::First, s1.clone()) } else { (Winner::Second, s2) };
                    labeled.push((Some(x_star), w1, m1));
                }
            }
        }

        let init = self.initial_value.clone().min(other.initial_value.clone());
        let pieces = labeled
            .iter()
            .filter_map(|(start, _, slope)| start.clone().map(|g| (g, slope.clone())))
            .collect();
        let func = Self::assemble(init, pieces);

        let mut winners: Vec<(Span, Winner)> = Vec::new();
        for (i, (start, w, _)) in labeled.iter().enumerate() {
            let end = labeled.get(i + 1).map(|(s, _, _)| s.clone().expect("only the first span is unbounded below"));
            match winners.last_mut() {
                Some((span, prev)) if *prev == *w => span.end = end,
                _ => winners.push((Span::new(start.clone(), end), *w)),
            }
        }
        MinResult { func, winners }
    }
}

impl fmt::Display for PwlFunction {
    /// Canonical serialization: `init 1/2; bp -21 1; bp -20.5 0; ...`
    /// (rationals in reduced fraction form).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "init {}", self.initial_value)?;
        for (g, m) in self.breakpoints.iter().zip(&self.slopes) {
            write!(f, "; bp {g} {m}")?;
        }
        Ok(())
    }
}

impl FromStr for PwlFunction {
    type Err = PwlError;

    fn from_str(s: &str) -> Result<Self, PwlError> {
        let mut chunks = s.split(';').map(str::trim);
        let head = chunks.next().unwrap_or("");
        let init = match head.strip_prefix("init") {
            Some(rest) => parse_rational(rest)?,
            None => return Err(PwlError::ParseFunction(format!("expected `init <value>`, got {head:?}"))),
        };
        let mut pieces = Vec::new();
        for chunk in chunks {
            if chunk.is_empty() {
                continue; // tolerate a trailing separator
            }
            let body = chunk.strip_prefix("bp").ok_or_else(|| {
                PwlError::ParseFunction(format!("expected `bp <breakpoint> <slope>`, got {chunk:?}"))
            })?;
            let mut parts = body.split_whitespace();
            let (g, m) = match (parts.next(), parts.next(), parts.next()) {
                (Some(g), Some(m), None) => (parse_rational(g)?, parse_rational(m)?),
                _ => {
                    return Err(PwlError::ParseFunction(format!(
                        "expected `bp <breakpoint> <slope>`, got {chunk:?}"
                    )));
                }
            };
            pieces.push((g, m));
        }
        PwlFunction::new(init, pieces)
    }
}
