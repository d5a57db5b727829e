//! Feature-keyed table of row-selection policies.
//!
//! Text form, one line per cell after a header:
//!
//! ```text
//! CANALBANK v1 buckets=5
//! 0 0 middle_out 1.000000
//! 0 1 top_down 0.750000
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::RowSelectionPolicy;
use crate::netlist::FeatureVector;

pub const DEFAULT_BUCKETS: usize = 5;
pub const DENSITY_BANDS: usize = 3;

const HEADER: &str = "CANALBANK v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellIndex {
    pub bucket: usize,
    pub band: usize,
}

impl CellIndex {
    /// Balance quantized into `buckets` equal bins; density banded as
    /// low (≤ 2), mid (3..=5) and high (≥ 6).
    pub fn of(features: &FeatureVector, buckets: usize) -> Self {
        // exact integer form of floor(balance * buckets)
        let total = features.left_count + features.right_count;
        let bucket = match total {
            0 => 0,
            _ => (features.left_count * buckets / total).min(buckets - 1),
        };
        CellIndex {
            bucket,
            band: density_band(features.density),
        }
    }
}

pub fn density_band(density: usize) -> usize {
    match density {
        0..=2 => 0,
        3..=5 => 1,
        _ => 2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BankCell {
    pub policy: RowSelectionPolicy,
    /// Observed success frequency of `policy` in this cell.
    pub success_weight: f64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BankParseError {
    #[error("missing or malformed header (expected `{HEADER} buckets=B`)")]
    Header,
    #[error("line {0}: malformed cell")]
    Line(usize),
    #[error("line {line}: cell ({bucket}, {band}) out of range or repeated")]
    BadCell { line: usize, bucket: usize, band: usize },
    #[error("{0} cell(s) missing")]
    Missing(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrategyBank {
    bucket_count: usize,
    cells: Vec<BankCell>,
}

impl StrategyBank {
    /// Every cell mapped to `policy` with weight 0 (no evidence yet).
    pub fn uniform(policy: RowSelectionPolicy, buckets: usize) -> Self {
        assert!(buckets >= 1);
        StrategyBank {
            bucket_count: buckets,
            cells: vec![
                BankCell {
                    policy,
                    success_weight: 0.0
                };
                buckets * DENSITY_BANDS
            ],
        }
    }

    pub fn bucket_count(&self) -> usize {
        self.bucket_count
    }

    fn slot(&self, idx: CellIndex) -> usize {
        assert!(idx.bucket < self.bucket_count && idx.band < DENSITY_BANDS);
        idx.bucket * DENSITY_BANDS + idx.band
    }

    pub fn cell(&self, idx: CellIndex) -> BankCell {
        self.cells[self.slot(idx)]
    }

    pub fn set(&mut self, idx: CellIndex, cell: BankCell) {
        let slot = self.slot(idx);
        self.cells[slot] = cell;
    }

    pub fn policy_for(&self, features: &FeatureVector) -> RowSelectionPolicy {
        self.cell(CellIndex::of(features, self.bucket_count)).policy
    }

    pub fn cells(&self) -> impl Iterator<Item = (CellIndex, BankCell)> + '_ {
        self.cells.iter().enumerate().map(|(i, &c)| {
            (
                CellIndex {
                    bucket: i / DENSITY_BANDS,
                    band: i % DENSITY_BANDS,
                },
                c,
            )
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER} buckets={}\n", self.bucket_count);
        for (idx, cell) in self.cells() {
            writeln!(
                out,
                "{} {} {} {:.6}",
                idx.bucket, idx.band, cell.policy, cell.success_weight
            )
            .unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, BankParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or(BankParseError::Header)?;
        let buckets: usize = header
            .strip_prefix(HEADER)
            .and_then(|rest| rest.trim().strip_prefix("buckets="))
            .and_then(|b| b.parse().ok())
            .filter(|&b| b >= 1)
            .ok_or(BankParseError::Header)?;

        let mut cells: Vec<Option<BankCell>> = vec![None; buckets * DENSITY_BANDS];
        for (line, l) in lines {
            let fields: Vec<&str> = l.split_whitespace().collect();
            let [bucket, band, policy, weight] = fields.as_slice() else {
                return Err(BankParseError::Line(line));
            };
            let bucket: usize = bucket.parse().map_err(|_| BankParseError::Line(line))?;
            let band: usize = band.parse().map_err(|_| BankParseError::Line(line))?;
            let policy: RowSelectionPolicy = policy.parse().map_err(|_| BankParseError::Line(line))?;
            let success_weight: f64 = weight
                .parse()
                .ok()
                .filter(|w: &f64| (0.0..=1.0).contains(w))
                .ok_or(BankParseError::Line(line))?;
            let slot = (bucket < buckets && band < DENSITY_BANDS)
                .then(|| bucket * DENSITY_BANDS + band)
                .filter(|&s| cells[s].is_none())
                .ok_or(BankParseError::BadCell { line, bucket, band })?;
            cells[slot] = Some(BankCell {
                policy,
                success_weight,
            });
        }
        let missing = cells.iter().filter(|c| c.is_none()).count();
        if missing > 0 {
            return Err(BankParseError::Missing(missing));
        }
        Ok(StrategyBank {
            bucket_count: buckets,
            cells: cells.into_iter().map(Option::unwrap).collect(),
        })
    }
}

impl Default for StrategyBank {
    fn default() -> Self {
        StrategyBank::uniform(RowSelectionPolicy::MiddleOut, DEFAULT_BUCKETS)
    }
}
