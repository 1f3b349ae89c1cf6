/// Caps on the work any single computation may do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest subsequence-sum set (or set sum) that will be materialized.
    pub max_sumset: usize,
    /// Number of exponent vectors the brute-force oracle may enumerate.
    pub oracle_budget: u64,
    /// Largest support for which `Σ(supp α)` is built during certificate extraction.
    pub max_support: usize,
    /// Largest group order accepted by the Davenport search.
    pub davenport_max_order: u64,
}

impl Limits {
    pub const DEFAULT_MAX_SUMSET: usize = 10_000_000;
    pub const DEFAULT_ORACLE_BUDGET: u64 = 1_000_000;
    pub const DEFAULT_MAX_SUPPORT: usize = 24;
    pub const DEFAULT_DAVENPORT_MAX_ORDER: u64 = 64;

    pub fn with_max_sumset(mut self, max_sumset: usize) -> Self {
        self.max_sumset = max_sumset;
        self
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_sumset: Self::DEFAULT_MAX_SUMSET,
            oracle_budget: Self::DEFAULT_ORACLE_BUDGET,
            max_support: Self::DEFAULT_MAX_SUPPORT,
            davenport_max_order: Self::DEFAULT_DAVENPORT_MAX_ORDER,
        }
    }
}
