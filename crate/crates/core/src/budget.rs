//! Work limits for the enumeration kernels.

/// Default cap on enumerated points.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("enumeration of {needed} points exceeds the budget of {budget}")]
pub struct BudgetExceeded {
    /// Saturates at `u128::MAX`.
    pub needed: u128,
    pub budget: u64,
}

/// `base^exp`, saturating.
pub fn saturating_pow(base: u64, exp: u64) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Errors unless `needed <= budget`.
pub fn check(needed: u128, budget: u64) -> Result<(), BudgetExceeded> {
    if needed > budget as u128 {
        Err(BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}
