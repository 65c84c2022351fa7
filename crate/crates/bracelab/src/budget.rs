//! Node budgets for the backtracking searches.
//!
//! Every potentially expensive search (automorphism enumeration, census
//! extension, isomorphism tests) charges one unit per explored node against a
//! shared meter and aborts with [`Error::BudgetExceeded`] instead of running
//! away.  Meters use an atomic counter so a single budget can be shared by
//! parallel workers.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Default node limit: generous for every documented operation at the orders
/// this crate targets, but small enough to stop runaway searches in seconds.
pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

/// Largest group order any search is willing to touch.
pub const DEFAULT_ORDER_LIMIT: usize = 255;

/// Configuration for search limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Backtracking node limit shared by one operation.
    pub node_limit: u64,
    /// Group orders above this are refused outright.
    pub order_limit: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            node_limit: DEFAULT_NODE_LIMIT,
            order_limit: DEFAULT_ORDER_LIMIT,
        }
    }
}

impl Budget {
    pub fn new(node_limit: u64) -> Self {
        Budget {
            node_limit,
            ..Budget::default()
        }
    }

    /// Refuse a named operation on a structure larger than the order limit.
    pub fn admit_order(&self, operation: &str, n: usize) -> Result<()> {
        if n > self.order_limit {
            Err(Error::BudgetExceeded {
                operation: operation.to_string(),
                limit: self.order_limit as u64,
            })
        } else {
            Ok(())
        }
    }

    /// Start a meter for one named operation.
    pub fn meter(&self, operation: &str) -> Meter {
        Meter {
            operation: operation.to_string(),
            limit: self.node_limit,
            used: AtomicU64::new(0),
        }
    }
}

/// A running counter against one operation's node limit.
#[derive(Debug)]
pub struct Meter {
    operation: String,
    limit: u64,
    used: AtomicU64,
}

impl Meter {
    /// Charge `amount` nodes; errors once the running total passes the limit.
    pub fn charge(&self, amount: u64) -> Result<()> {
        let before = self.used.fetch_add(amount, Ordering::Relaxed);
        if before.saturating_add(amount) > self.limit {
            Err(Error::BudgetExceeded {
                operation: self.operation.clone(),
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charges_accumulate_until_limit() {
        let meter = Budget::new(10).meter("test-op");
        for _ in 0..10 {
            meter.charge(1).unwrap();
        }
        let err = meter.charge(1).unwrap_err();
        match err {
            Error::BudgetExceeded { operation, limit } => {
                assert_eq!(operation, "test-op");
                assert_eq!(limit, 10);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn default_budget_is_large() {
        assert_eq!(Budget::default().node_limit, DEFAULT_NODE_LIMIT);
    }
}
