use crate::error::{Error, Result};

/// Default limit for both subset enumerations and projective point scans.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Upper limits on the exhaustive enumerations a computation may perform.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of index subsets enumerated in one pass.
    pub subsets: u64,
    /// Maximum number of projective points visited in one finite-field scan.
    pub scan: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            subsets: DEFAULT_BUDGET,
            scan: DEFAULT_BUDGET,
        }
    }
}

impl Budget {
    pub fn check_subsets(&self, required: u128) -> Result<()> {
        if required > u128::from(self.subsets) {
            return Err(Error::BudgetExceeded {
                required,
                budget: self.subsets,
            });
        }
        Ok(())
    }

    pub fn check_scan(&self, required: u128) -> Result<()> {
        if required > u128::from(self.scan) {
            return Err(Error::BudgetExceeded {
                required,
                budget: self.scan,
            });
        }
        Ok(())
    }
}
