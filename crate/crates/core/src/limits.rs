//! Size caps for the exponential searches.

use std::env;

pub const DEFAULT_MAX_WEIGHT: u32 = 64;
pub const DEFAULT_MAX_ORBIT: usize = 1_000_000;
pub const DEFAULT_MAX_BALL: usize = 200_000;
pub const DEFAULT_MAX_NODES: u64 = 100_000_000;
pub const DEFAULT_MAX_COSET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest finite weight accepted by the parser.
    pub max_weight: u32,
    /// Largest braid orbit explored for a single word.
    pub max_orbit: usize,
    /// Largest Cayley ball materialized.
    pub max_ball: usize,
    /// Backtracking node budget for the brute-force oracle.
    pub max_nodes: u64,
    /// Largest number of coset elements visited by the coset oracle.
    pub max_coset: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_weight: DEFAULT_MAX_WEIGHT,
            max_orbit: DEFAULT_MAX_ORBIT,
            max_ball: DEFAULT_MAX_BALL,
            max_nodes: DEFAULT_MAX_NODES,
            max_coset: DEFAULT_MAX_COSET,
        }
    }
}

impl Limits {
    /// Defaults overridden by `COXCAY_MAX_ORBIT`, `COXCAY_MAX_BALL`,
    /// `COXCAY_MAX_NODES` and `COXCAY_MAX_WEIGHT`. Unparsable values are ignored.
    pub fn from_env() -> Self {
        fn read<T: std::str::FromStr>(key: &str) -> Option<T> {
            env::var(key).ok()?.trim().parse().ok()
        }
        let mut limits = Limits::default();
        if let Some(v) = read("COXCAY_MAX_ORBIT") {
            limits.max_orbit = v;
        }
        if let Some(v) = read("COXCAY_MAX_BALL") {
            limits.max_ball = v;
        }
        if let Some(v) = read("COXCAY_MAX_NODES") {
            limits.max_nodes = v;
        }
        if let Some(v) = read("COXCAY_MAX_WEIGHT") {
            limits.max_weight = v;
        }
        limits
    }
}
