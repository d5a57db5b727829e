use serde::Serialize;

/// Grid bounds and switches shared by every router.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RouterConfig {
    /// Track rows available for trunks, numbered `1..=max_rows`.
    pub max_rows: usize,
    /// First track row. Kept for completeness; rows always start at 1.
    pub min_row: usize,
    /// First grid column. Kept for completeness; columns always start at 0.
    pub min_column: usize,
    /// Seed for anything randomized downstream (trainer, bench).
    pub seed: u64,
    /// Lets the left-edge router fall back to dogleg splitting on cyclic VCGs.
    pub dogleg_enabled: bool,
}

impl RouterConfig {
    pub fn new(max_rows: usize) -> Self {
        assert!(max_rows >= 1, "max_rows must be at least 1");
        RouterConfig {
            max_rows,
            min_row: 1,
            min_column: 0,
            seed: 0,
            dogleg_enabled: false,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_dogleg(mut self, enabled: bool) -> Self {
        self.dogleg_enabled = enabled;
        self
    }

    /// Row of the top terminal edge.
    pub fn top_row(&self) -> usize {
        self.max_rows + 1
    }

    pub fn track_rows(&self) -> std::ops::RangeInclusive<usize> {
        self.min_row..=self.max_rows
    }
}
