use std::cell::Cell;
use std::time::Instant;

use crate::error::{Error, Result};

/// Default ceiling on enumeration steps for a single top-level call.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Step counter shared by the enumerators of one computation.
///
/// Every search loop charges one step per candidate it visits; once the
/// limit is crossed the enumerator returns [`Error::BudgetExceeded`]. An
/// optional deadline is polled every 4096 steps and reported as
/// [`Error::Timeout`].
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: Cell<u64>,
    deadline: Option<Instant>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: Cell::new(0), deadline: None }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    pub fn deadline(&self) -> Option<Instant> {
        self.deadline
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    pub fn tick(&self, what: &str) -> Result<()> {
        self.spend(1, what)
    }

    pub fn spend(&self, steps: u64, what: &str) -> Result<()> {
        let before = self.used.get();
        let used = before.saturating_add(steps);
        self.used.set(used);
        if used > self.limit {
            return Err(Error::BudgetExceeded { what: what.to_string(), limit: self.limit });
        }
        if let Some(deadline) = self.deadline {
            if (before >> 12 != used >> 12 || steps > 1) && Instant::now() > deadline {
                return Err(Error::Timeout { what: what.to_string() });
            }
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}
