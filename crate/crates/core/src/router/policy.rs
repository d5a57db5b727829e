use std::fmt;
use std::str::FromStr;

use super::RouterConfig;

/// Order in which candidate track rows are tried for the next trunk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RowSelectionPolicy {
    /// `floor(max_rows / 2)`, then alternating one row up, one row down.
    MiddleOut,
    /// `max_rows` down to 1.
    TopDown,
    /// 1 up to `max_rows`.
    BottomUp,
    /// Rows with the fewest occupied neighbours first, middle-out on ties.
    DensityWeighted,
}

impl RowSelectionPolicy {
    pub const ALL: [RowSelectionPolicy; 4] = [
        RowSelectionPolicy::MiddleOut,
        RowSelectionPolicy::TopDown,
        RowSelectionPolicy::BottomUp,
        RowSelectionPolicy::DensityWeighted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RowSelectionPolicy::MiddleOut => "middle_out",
            RowSelectionPolicy::TopDown => "top_down",
            RowSelectionPolicy::BottomUp => "bottom_up",
            RowSelectionPolicy::DensityWeighted => "density_weighted",
        }
    }

    /// Fixed scalar parameters. Only the density-weighted policy has one:
    /// how many rows on each side count as neighbours.
    pub fn parameters(self) -> &'static [f64] {
        match self {
            RowSelectionPolicy::DensityWeighted => &[1.0],
            _ => &[],
        }
    }

    /// Candidate rows in preference order. `occupied(r)` tells whether row
    /// `r` already carries a trunk.
    pub fn candidate_rows(self, cfg: &RouterConfig, occupied: impl Fn(usize) -> bool) -> Vec<usize> {
        let (lo, hi) = (cfg.min_row.max(1), cfg.max_rows);
        match self {
            RowSelectionPolicy::MiddleOut => middle_out(lo, hi),
            RowSelectionPolicy::TopDown => (lo..=hi).rev().collect(),
            RowSelectionPolicy::BottomUp => (lo..=hi).collect(),
            RowSelectionPolicy::DensityWeighted => {
                let reach = self.parameters()[0] as usize;
                let mut rows = middle_out(lo, hi);
                rows.sort_by_key(|&r| {
                    (r.saturating_sub(reach)..=r + reach)
                        .filter(|&n| n != r && (lo..=hi).contains(&n) && occupied(n))
                        .count()
                });
                rows
            }
        }
    }

    /// First row of the middle-out order: the adaptive router's starting row.
    pub fn middle_row(cfg: &RouterConfig) -> usize {
        middle_out(cfg.min_row.max(1), cfg.max_rows)[0]
    }
}

/// `hi / 2, hi / 2 + 1, hi / 2 - 1, ...` restricted to `lo..=hi`.
fn middle_out(lo: usize, hi: usize) -> Vec<usize> {
    let mid = (hi / 2) as isize;
    let mut rows = Vec::with_capacity(hi + 1 - lo);
    for d in 0..=(hi as isize + 1) {
        for r in [mid + d, mid - d] {
            if r >= lo as isize && r <= hi as isize && !rows.contains(&(r as usize)) {
                rows.push(r as usize);
            }
        }
    }
    rows
}

impl fmt::Display for RowSelectionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RowSelectionPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RowSelectionPolicy::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown policy {s:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn middle_out_order() {
        // 2, 3, 1, 4, 0, 5 with 0 clipped away
        let cfg = RouterConfig::new(5);
        assert_eq!(
            RowSelectionPolicy::MiddleOut.candidate_rows(&cfg, |_| false),
            vec![2, 3, 1, 4, 5]
        );
        assert_eq!(RowSelectionPolicy::middle_row(&RouterConfig::new(4)), 2);
        assert_eq!(RowSelectionPolicy::middle_row(&RouterConfig::new(1)), 1);
    }

    #[test]
    fn scans() {
        let cfg = RouterConfig::new(3);
        assert_eq!(RowSelectionPolicy::TopDown.candidate_rows(&cfg, |_| false), vec![3, 2, 1]);
        assert_eq!(RowSelectionPolicy::BottomUp.candidate_rows(&cfg, |_| false), vec![1, 2, 3]);
    }

    #[test]
    fn density_weighted_avoids_crowded_rows() {
        let cfg = RouterConfig::new(5);
        // row 2 occupied: rows 1 and 3 have one busy neighbour
        let rows = RowSelectionPolicy::DensityWeighted.candidate_rows(&cfg, |r| r == 2);
        assert_eq!(rows, vec![2, 4, 5, 3, 1]);
    }

    #[test]
    fn every_policy_is_a_permutation() {
        for max in 1..12 {
            let cfg = RouterConfig::new(max);
            for p in RowSelectionPolicy::ALL {
                let mut rows = p.candidate_rows(&cfg, |r| r % 3 == 0);
                rows.sort_unstable();
                assert_eq!(rows, (1..=max).collect::<Vec<_>>(), "{p} max {max}");
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for p in RowSelectionPolicy::ALL {
            assert_eq!(p.name().parse::<RowSelectionPolicy>().unwrap(), p);
        }
        assert!("sideways".parse::<RowSelectionPolicy>().is_err());
    }
}
