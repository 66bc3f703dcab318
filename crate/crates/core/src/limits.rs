//! Enumeration caps shared by every materializing operation.

use std::sync::OnceLock;

/// Default cap on materialized sets (words, blocks, subsets).
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// Name of the environment variable that overrides [`DEFAULT_ENUMERATION_CAP`].
pub const CAP_ENV_VAR: &str = "SHIFTLAB_CAP";

/// Largest automaton a state-set dynamic program will accept. State sets are
/// bit masks, so this cannot exceed 64.
pub const MAX_TRACKED_STATES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub enumeration: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl Limits {
    /// Reads `SHIFTLAB_CAP`, falling back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        let enumeration = std::env::var(CAP_ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_ENUMERATION_CAP);
        Limits { enumeration }
    }

    /// Process-wide limits, read from the environment on first use.
    pub fn global() -> Limits {
        static GLOBAL: OnceLock<Limits> = OnceLock::new();
        *GLOBAL.get_or_init(Limits::from_env)
    }
}
