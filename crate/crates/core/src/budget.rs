use crate::error::{Error, Result};

/// Environment variable that overrides [`Budget::default`].
pub const BUDGET_ENV: &str = "RADOFORGE_BUDGET";

/// Upper bound on the number of elementary checks an exhaustive routine may
/// perform. Exhaustive routines compute their nominal work up front and refuse
/// to start when it exceeds the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(10_000_000_000);

    pub fn unlimited() -> Self {
        Budget(u64::MAX)
    }

    /// Reads `RADOFORGE_BUDGET`, falling back to the default.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().replace('_', "").parse().ok())
            .map(Budget)
            .unwrap_or_default()
    }

    pub fn check(&self, required: u128) -> Result<()> {
        if required > self.0 as u128 {
            Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
