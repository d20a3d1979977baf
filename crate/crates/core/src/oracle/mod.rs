//! Exhaustive enumeration oracles.
//!
//! Every closed form in [`crate::counting`] is re-derived here by listing
//! matrices. Index spaces are enumerated in a fixed order: coefficient slots
//! are ordered row-major by entry and then by ascending degree, and the
//! matrix with index `i` has the base-q digits of `i`, least significant
//! first, in those slots. Shards are contiguous index ranges, so results do
//! not depend on the shard count.

mod lattice;
pub(crate) mod linalg;
mod orbit;
mod reps;
mod space;
mod unipotent;

use num_bigint::BigUint;

pub use lattice::{count_orbit_lattice, left_quotient};
pub use orbit::{
    census_by_det_degree, count_orbit_bruteforce, g_set, iter_polys, orbit_census, DetDegreeCensus,
};
pub use reps::enumerate_hnf_reps;
pub use unipotent::{
    count_p_bruteforce, count_qr_bruteforce, gl_count_bruteforce, qr_scan, QrKind, QrScan,
};

use crate::error::{Error, Result};

/// Limits on an enumeration: a cap on visited items and a shard count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_items: u64,
    pub partitions: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_items: 100_000_000,
            partitions: 8,
        }
    }
}

impl EnumerationBudget {
    pub fn with_partitions(self, partitions: usize) -> Self {
        EnumerationBudget {
            partitions: partitions.max(1),
            ..self
        }
    }

    pub fn with_max_items(self, max_items: u64) -> Self {
        EnumerationBudget { max_items, ..self }
    }

    /// Refuses when `base^exponent` items exceed the cap; returns the cost otherwise.
    pub fn admit(&self, base: u32, exponent: u64) -> Result<u64> {
        let cost = u32::try_from(exponent)
            .ok()
            .and_then(|e| (base as u64).checked_pow(e));
        match cost {
            Some(c) if c <= self.max_items => Ok(c),
            _ => Err(Error::BudgetExceeded {
                cost: format!(
                    "{}",
                    num_traits::pow(BigUint::from(base), exponent as usize)
                ),
                max_items: self.max_items,
            }),
        }
    }

    pub fn admit_items(&self, items: u64) -> Result<u64> {
        if items > self.max_items {
            return Err(Error::BudgetExceeded {
                cost: items.to_string(),
                max_items: self.max_items,
            });
        }
        Ok(items)
    }
}
