//! Offline construction of a [`StrategyBank`]: for every feature cell, draw
//! instances that fall in the cell, route them under each candidate policy
//! and keep the policy with the best success rate (fewest tracks on ties).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{route_adaptive, BankCell, CellIndex, RouterConfig, RowSelectionPolicy, StrategyBank};
use super::{DEFAULT_BUCKETS, DENSITY_BANDS};
use crate::layout::metrics;
use crate::netlist::{extract_features, ChannelSpec};

/// Supplies training instances aimed at a feature cell.
pub trait InstanceSource: Sync {
    /// One draw; `None` when the draw misses `cell` or the source cannot
    /// produce instances there.
    fn sample(&self, rng: &mut ChaCha8Rng, cell: CellIndex, buckets: usize) -> Option<(ChannelSpec, RouterConfig)>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingOptions {
    pub buckets: usize,
    /// Instances per cell.
    pub trials: usize,
    pub seed: u64,
    /// Draws allowed per wanted instance before a cell is declared empty.
    pub attempts_per_trial: usize,
}

impl Default for TrainingOptions {
    fn default() -> Self {
        TrainingOptions {
            buckets: DEFAULT_BUCKETS,
            trials: 20,
            seed: 0,
            attempts_per_trial: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyScore {
    pub policy: RowSelectionPolicy,
    pub successes: usize,
    pub trials: usize,
    /// Mean track count over successful runs; `None` without any.
    pub mean_tracks: Option<f64>,
}

impl PolicyScore {
    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellReport {
    pub cell: CellIndex,
    pub instances: usize,
    pub scores: Vec<PolicyScore>,
    pub chosen: RowSelectionPolicy,
    /// No instance could be drawn; the cell fell back to middle-out.
    pub empty: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Training {
    pub bank: StrategyBank,
    pub cells: Vec<CellReport>,
}

impl Training {
    pub fn empty_cells(&self) -> impl Iterator<Item = CellIndex> + '_ {
        self.cells.iter().filter(|c| c.empty).map(|c| c.cell)
    }
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

fn train_cell<S: InstanceSource>(
    source: &S,
    policies: &[RowSelectionPolicy],
    opts: &TrainingOptions,
    cell: CellIndex,
) -> CellReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream((cell.bucket * DENSITY_BANDS + cell.band) as u64);

    let mut instances = Vec::with_capacity(opts.trials);
    let mut attempts = 0;
    while instances.len() < opts.trials && attempts < opts.trials * opts.attempts_per_trial {
        attempts += 1;
        if let Some((spec, cfg)) = source.sample(&mut rng, cell, opts.buckets) {
            debug_assert_eq!(CellIndex::of(&extract_features(&spec), opts.buckets), cell);
            instances.push((spec, cfg));
        }
    }
    if instances.is_empty() {
        return CellReport {
            cell,
            instances: 0,
            scores: Vec::new(),
            chosen: RowSelectionPolicy::MiddleOut,
            empty: true,
        };
    }

    let scores: Vec<PolicyScore> = policies
        .iter()
        .map(|&policy| {
            let bank = StrategyBank::uniform(policy, opts.buckets);
            let tracks: Vec<usize> = instances
                .iter()
                .filter_map(|(spec, cfg)| route_adaptive(spec, cfg, &bank).ok())
                .map(|r| metrics(&r).tracks_used)
                .collect();
            PolicyScore {
                policy,
                successes: tracks.len(),
                trials: instances.len(),
                mean_tracks: (!tracks.is_empty())
                    .then(|| tracks.iter().sum::<usize>() as f64 / tracks.len() as f64),
            }
        })
        .collect();

    // most successes, then fewest mean tracks, then earliest candidate
    let best = scores
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| {
            b.successes
                .cmp(&a.successes)
                .then_with(|| {
                    let ta = a.mean_tracks.unwrap_or(f64::INFINITY);
                    let tb = b.mean_tracks.unwrap_or(f64::INFINITY);
                    ta.total_cmp(&tb)
                })
                .then(i.cmp(j))
        })
        .map(|(_, s)| s.policy)
        .unwrap();

    CellReport {
        cell,
        instances: instances.len(),
        scores,
        chosen: best,
        empty: false,
    }
}

/// Trains one bank cell per (balance bucket, density band). Cells are
/// evaluated in parallel, each from its own seeded stream, so the result
/// depends only on `source`, `policies` and `opts`.
pub fn train<S: InstanceSource>(source: &S, policies: &[RowSelectionPolicy], opts: &TrainingOptions) -> Training {
    assert!(!policies.is_empty(), "at least one candidate policy required");
    assert!(opts.trials >= 1, "trials must be at least 1");
    let cells: Vec<CellIndex> = (0..opts.buckets)
        .flat_map(|bucket| (0..DENSITY_BANDS).map(move |band| CellIndex { bucket, band }))
        .collect();
    let reports: Vec<CellReport> = cells
        .par_iter()
        .map(|&cell| train_cell(source, policies, opts, cell))
        .collect();

    let mut bank = StrategyBank::uniform(RowSelectionPolicy::MiddleOut, opts.buckets);
    for r in &reports {
        let success_weight = r
            .scores
            .iter()
            .find(|s| s.policy == r.chosen)
            .map_or(0.0, |s| round6(s.success_rate()));
        bank.set(
            r.cell,
            BankCell {
                policy: r.chosen,
                success_weight,
            },
        );
    }
    Training { bank, cells: reports }
}

pub fn train_bank<S: InstanceSource>(source: &S, policies: &[RowSelectionPolicy], trials: usize, seed: u64) -> StrategyBank {
    let opts = TrainingOptions {
        trials,
        seed,
        ..TrainingOptions::default()
    };
    train(source, policies, &opts).bank
}
