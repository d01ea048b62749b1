//! Global decimal-digit budget controlling when symbolic values collapse to
//! explicit numerals.

use std::sync::OnceLock;

/// Default threshold: numerals up to this many decimal digits are materialized.
pub const DEFAULT_DIGIT_THRESHOLD: u64 = 10_000;

static THRESHOLD: OnceLock<u64> = OnceLock::new();

/// Digit threshold for numeric collapse. Overridable via `DIO_DIGIT_BUDGET`.
pub fn digit_threshold() -> u64 {
    *THRESHOLD.get_or_init(|| {
        std::env::var("DIO_DIGIT_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_DIGIT_THRESHOLD)
    })
}
