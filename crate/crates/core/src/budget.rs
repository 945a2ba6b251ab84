use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Environment variable capping every budget with a single decimal integer.
pub const BUDGET_OVERRIDE_ENV: &str = "FFMODULI_BUDGET_OVERRIDE";

pub const DEFAULT_BOX_LIMIT: u64 = 1 << 34;
pub const DEFAULT_GRID_LIMIT: u64 = 1 << 34;
pub const DEFAULT_SYMBOLIC_LIMIT: u64 = 1 << 24;

/// Work limits for enumerations. `box_limit` bounds point enumerations,
/// `grid_limit` bounds (grid size x box size) products for integrals, and
/// `symbolic_limit` bounds the number of live terms in symbolic expansions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub box_limit: BigUint,
    pub grid_limit: BigUint,
    pub symbolic_limit: BigUint,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            box_limit: DEFAULT_BOX_LIMIT.into(),
            grid_limit: DEFAULT_GRID_LIMIT.into(),
            symbolic_limit: DEFAULT_SYMBOLIC_LIMIT.into(),
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        let big = BigUint::from(1u8) << 4096u32;
        Budget {
            box_limit: big.clone(),
            grid_limit: big.clone(),
            symbolic_limit: big,
        }
    }

    /// Applies the environment override, if set, as a cap on every limit.
    pub fn with_env_override(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(BUDGET_OVERRIDE_ENV) {
            let cap: BigUint = v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{BUDGET_OVERRIDE_ENV}={v} is not an integer")))?;
            self.box_limit = cap.clone();
            self.grid_limit = cap.clone();
            self.symbolic_limit = cap;
        }
        Ok(self)
    }

    pub fn check_box(&self, what: &str, needed: &BigUint) -> Result<()> {
        check(what, needed, &self.box_limit)
    }

    pub fn check_grid(&self, what: &str, needed: &BigUint) -> Result<()> {
        check(what, needed, &self.grid_limit)
    }

    pub fn check_symbolic(&self, what: &str, needed: &BigUint) -> Result<()> {
        check(what, needed, &self.symbolic_limit)
    }
}

fn check(what: &str, needed: &BigUint, limit: &BigUint) -> Result<()> {
    if needed > limit {
        return Err(Error::BudgetExceeded {
            what: what.to_string(),
            needed: needed.to_string(),
            limit: limit.to_string(),
        });
    }
    Ok(())
}

/// `q^k` as a big integer.
pub fn big_pow(q: u32, k: u64) -> BigUint {
    num_traits::pow(BigUint::from(q), k as usize)
}
