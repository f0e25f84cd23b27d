//! Process-wide switch for the memo tables (associator coefficients,
//! relation sets, Bernoulli numbers). Every table is write-once per key and
//! read under a lock, so readers only ever see complete entries.

use std::sync::atomic::{AtomicBool, Ordering};

static CACHING: AtomicBool = AtomicBool::new(true);

/// Off means every value is recomputed on each request.
pub fn set_caching(enabled: bool) {
    CACHING.store(enabled, Ordering::SeqCst);
}

pub fn caching_enabled() -> bool {
    CACHING.load(Ordering::SeqCst)
}
