//! Deviation cost of compressing a controllable quantity below its nominal value.

use num_traits::Zero;

use crate::{PwlError, Rat};

/// Cost `g(x) = ν·(x₂ − x)` for `x ∈ [x₁, x₂)` and 0 elsewhere.
///
/// `x₂` is the nominal value, `x₁` the largest allowed compression, and `ν`
/// the per-unit compression rate. The window must have positive width and the
/// rate must be positive; on the closed window `[x₁, x₂]` the cost is
/// continuous, reaching `ν·(x₂ − x₁)` at `x₁` and 0 at `x₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationCost {
    x1: Rat,
    x2: Rat,
    nu: Rat,
}

impl DeviationCost {
    pub fn new(x1: Rat, x2: Rat, nu: Rat) -> Result<Self, PwlError> {
        if x1 >= x2 {
            return Err(PwlError::EmptyWindow { x1, x2 });
        }
        if nu <= Rat::zero() {
            return Err(PwlError::NonpositiveRate(nu));
        }
        Ok(DeviationCost { x1, x2, nu })
    }

    pub fn x1(&self) -> &Rat {
        &self.x1
    }

    pub fn x2(&self) -> &Rat {
        &self.x2
    }

    pub fn nu(&self) -> &Rat {
        &self.nu
    }

    /// Window width `x₂ − x₁`.
    pub fn width(&self) -> Rat {
        &self.x2 - &self.x1
    }

    /// Full compression cost `ν·(x₂ − x₁)`, the value at `x₁`.
    pub fn max_cost(&self) -> Rat {
        &self.nu * self.width()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        if *x < self.x1 || *x >= self.x2 {
            Rat::zero()
        } else {
            &self.nu * (&self.x2 - x)
        }
    }
}
