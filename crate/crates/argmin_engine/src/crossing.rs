//! Where the slopes of `f` cross the deviation rate `ν`.

use pwl_core::{PwlFunction, Rat};

/// Indices (1-based, into the pieces of `f`) where the slope sequence
/// `μ₀ = 0, μ₁, …, μ_M` crosses the rate `ν`.
///
/// `a` collects upward crossings (`μᵢ₋₁ < ν ≤ μᵢ`), `b` downward ones
/// (`μᵢ₋₁ ≥ ν > μᵢ`). Comparisons are exact, so a slope equal to `ν` counts
/// as being above it. The sets interleave as `a₁ < b₁ < a₂ < b₂ < …` and
/// `|a| − |b|` is 1 when the final slope is at least `ν`, else 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingSets {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl CrossingSets {
    /// Number of upward jumps the argmin can make: at most one per downward
    /// crossing of `f`.
    pub fn max_jumps(&self) -> usize {
        self.b.len()
    }
}

/// Scans the slope sequence of `f` once and classifies every crossing of `ν`.
pub fn crossing_sets(f: &PwlFunction, nu: &Rat) -> CrossingSets {
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut prev_above = false; // μ₀ = 0 and ν > 0, so the sequence starts below
    for (idx, slope) in f.slopes().iter().enumerate() {
        let above = slope >= nu;
        match (prev_above, above) {
            (false, true) => a.push(idx + 1),
            (true, false) => b.push(idx + 1),
            _ => {}
        }
        prev_above = above;
    }
    debug_assert!(a.len() == b.len() || a.len() == b.len() + 1);
    debug_assert!(a.iter().zip(&b).all(|(ai, bi)| ai < bi));
    CrossingSets { a, b }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pwl_core::{rat, ratio};

    fn f(pieces: &[(i64, (i64, i64))]) -> PwlFunction {
        PwlFunction::new(rat(0), pieces.iter().map(|(g, (p, q))| (rat(*g), ratio(*p, *q)))).unwrap()
    }

    #[test]
    fn classifies_crossings_with_exact_boundaries() {
        // Slopes 2, 1/2, 2, 1/2, 1, 1/2, 2 against ν = 1: the slope exactly
        // equal to ν counts as above it.
        let f = f(&[
            (16, (2, 1)),
            (17, (1, 2)),
            (19, (2, 1)),
            (20, (1, 2)),
            (26, (1, 1)),
            (31, (1, 2)),
            (35, (2, 1)),
        ]);
        let sets = crossing_sets(&f, &rat(1));
        assert_eq!(sets.a, vec![1, 3, 5, 7]);
        assert_eq!(sets.b, vec![2, 4, 6]);
    }

    #[test]
    fn no_crossings_when_f_stays_below() {
        let f = f(&[(0, (1, 2)), (5, (1, 4))]);
        let sets = crossing_sets(&f, &rat(1));
        assert!(sets.a.is_empty());
        assert!(sets.b.is_empty());
        assert_eq!(sets.max_jumps(), 0);
    }

    #[test]
    fn final_slope_above_gives_one_extra_upward_crossing() {
        let f = f(&[(0, (2, 1))]);
        let sets = crossing_sets(&f, &rat(1));
        assert_eq!(sets.a, vec![1]);
        assert!(sets.b.is_empty());
    }
}
