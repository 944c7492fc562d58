//! Process-wide enumeration guards.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

static PERM_LIMIT: AtomicUsize = AtomicUsize::new(10);

/// Largest `n` for which permutations of `[n]` are enumerated.
pub fn perm_limit() -> usize {
    PERM_LIMIT.load(Ordering::Relaxed)
}

pub fn set_perm_limit(n: usize) {
    PERM_LIMIT.store(n, Ordering::Relaxed);
}

pub fn check_perm_rank(what: &'static str, n: usize) -> Result<()> {
    let limit = perm_limit();
    if n > limit {
        Err(Error::ResourceLimit { what, n, limit })
    } else {
        Ok(())
    }
}

/// Rank limit for operations on the full regular representation of `HCl_n(0)`.
pub const REGULAR_RANK_LIMIT: usize = 5;

/// Largest `dim M · dim N` accepted by Hom-space solves.
pub const HOM_PRODUCT_LIMIT: usize = 40_000;

pub fn check(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::ResourceLimit { what, n, limit })
    } else {
        Ok(())
    }
}
