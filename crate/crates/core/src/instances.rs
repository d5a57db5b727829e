//! Seeded random channel instances for training, benchmarking and tests.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::constraints::channel_density;
use crate::netlist::{extract_features, ChannelSpec, NetId, Side, Terminal};
use crate::router::{CellIndex, InstanceSource, RouterConfig};

/// Shape of a random instance family.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceFamily {
    pub min_nets: usize,
    pub max_nets: usize,
    pub min_columns: usize,
    pub max_columns: usize,
    /// Upper bound on terminals per net (at least 2).
    pub max_terminals: usize,
    /// Probability that a net gets more than two terminals.
    pub multi_terminal_prob: f64,
    /// Orient stacked columns so the VCG is acyclic.
    pub acyclic: bool,
    /// Track rows granted above the channel density.
    pub row_slack: usize,
}

impl InstanceFamily {
    /// 5–50 nets over 10–100 columns.
    pub fn standard() -> Self {
        InstanceFamily {
            min_nets: 5,
            max_nets: 50,
            min_columns: 10,
            max_columns: 100,
            max_terminals: 4,
            multi_terminal_prob: 0.25,
            acyclic: false,
            row_slack: 2,
        }
    }

    /// Smaller instances used by the bench and trainer defaults.
    pub fn bench() -> Self {
        InstanceFamily {
            min_nets: 5,
            max_nets: 24,
            min_columns: 10,
            max_columns: 48,
            ..InstanceFamily::standard()
        }
    }

    pub fn acyclic(mut self, yes: bool) -> Self {
        self.acyclic = yes;
        self
    }

    pub fn config_for(&self, spec: &ChannelSpec) -> RouterConfig {
        RouterConfig::new(channel_density(spec).0 + self.row_slack.max(1))
    }

    pub fn generate(&self, rng: &mut ChaCha8Rng) -> ChannelSpec {
        let nets = rng.gen_range(self.min_nets..=self.max_nets);
        let sizes = self.net_sizes(rng, nets);
        let needed = sizes.iter().sum::<usize>().div_ceil(2) + 2;
        let lo = self.min_columns.max(needed).min(self.max_columns);
        let columns = rng.gen_range(lo..=self.max_columns.max(lo));
        build_instance(rng, columns, &sizes, None, self.acyclic)
    }

    fn net_sizes(&self, rng: &mut ChaCha8Rng, nets: usize) -> Vec<usize> {
        (0..nets)
            .map(|_| {
                if self.max_terminals > 2 && rng.gen_bool(self.multi_terminal_prob) {
                    rng.gen_range(3..=self.max_terminals)
                } else {
                    2
                }
            })
            .collect()
    }
}

impl InstanceSource for InstanceFamily {
    /// Draws an instance biased toward `cell`: net count follows the density
    /// band and each terminal lands in the left half with probability drawn
    /// from the balance bucket. The trainer filters misses.
    fn sample(&self, rng: &mut ChaCha8Rng, cell: CellIndex, buckets: usize) -> Option<(ChannelSpec, RouterConfig)> {
        let nets = match cell.band {
            0 => rng.gen_range(2..=4),
            1 => rng.gen_range(4..=10),
            _ => rng.gen_range(8..=self.max_nets.max(12)),
        };
        let sizes = self.net_sizes(rng, nets);
        let lo = bucket_lo(cell.bucket, buckets);
        let hi = bucket_lo(cell.bucket + 1, buckets);
        let bias = rng.gen_range(lo..hi.max(lo + 1e-9)).clamp(0.0, 1.0);
        let needed = sizes.iter().sum::<usize>() + 2;
        let lo_cols = self.min_columns.max(needed).min(self.max_columns);
        let columns = rng.gen_range(lo_cols..=self.max_columns.max(lo_cols));
        let spec = build_instance(rng, columns, &sizes, Some(bias), self.acyclic);
        (CellIndex::of(&extract_features(&spec), buckets) == cell).then(|| {
            let cfg = self.config_for(&spec);
            (spec, cfg)
        })
    }
}

fn bucket_lo(bucket: usize, buckets: usize) -> f64 {
    bucket as f64 / buckets as f64
}

/// Places nets of the given terminal counts on random free positions.
///
/// With `left_bias = Some(b)` each terminal picks the left half with
/// probability `b`. Two-terminal nets never end up stacked in one column.
/// With `acyclic`, each column's top/bottom pair is swapped as needed so
/// every VCG edge points from a lower to a higher random rank.
pub fn build_instance(
    rng: &mut ChaCha8Rng,
    columns: usize,
    sizes: &[usize],
    left_bias: Option<f64>,
    acyclic: bool,
) -> ChannelSpec {
    let mid = columns / 2;
    let mut top = vec![0 as NetId; columns];
    let mut bottom = vec![0 as NetId; columns];
    let mut next_id: NetId = 1;

    for &k in sizes {
        let mut free: Vec<Terminal> = (0..columns)
            .flat_map(|c| [Terminal::top(c), Terminal::bottom(c)])
            .filter(|t| slot(&top, &bottom, *t) == 0)
            .collect();
        if free.len() < k {
            break;
        }
        let mut chosen: Vec<Terminal> = Vec::with_capacity(k);
        for _ in 0..8 {
            chosen.clear();
            let mut pool = free.clone();
            for _ in 0..k {
                let pick = match left_bias {
                    Some(b) => {
                        let want_left = rng.gen_bool(b);
                        let side: Vec<usize> = (0..pool.len())
                            .filter(|&i| (pool[i].column < mid) == want_left)
                            .collect();
                        match side.choose(rng) {
                            Some(&i) => i,
                            None => rng.gen_range(0..pool.len()),
                        }
                    }
                    None => rng.gen_range(0..pool.len()),
                };
                chosen.push(pool.swap_remove(pick));
            }
            let stacked = chosen.iter().all(|t| t.column == chosen[0].column);
            if !stacked {
                break;
            }
        }
        if chosen.iter().all(|t| t.column == chosen[0].column) {
            continue;
        }
        for t in &chosen {
            *slot_mut(&mut top, &mut bottom, *t) = next_id;
        }
        free.retain(|t| !chosen.contains(t));
        next_id += 1;
    }

    if acyclic {
        let mut rank: Vec<usize> = (0..next_id as usize).collect();
        rank.shuffle(rng);
        for c in 0..columns {
            let (a, b) = (top[c], bottom[c]);
            if a != 0 && b != 0 && a != b && rank[a as usize] > rank[b as usize] {
                top[c] = b;
                bottom[c] = a;
            }
        }
    }

    ChannelSpec::new(top, bottom).expect("generated instance satisfies invariants")
}

fn slot(top: &[NetId], bottom: &[NetId], t: Terminal) -> NetId {
    match t.side {
        Side::Top => top[t.column],
        Side::Bottom => bottom[t.column],
    }
}

fn slot_mut<'a>(top: &'a mut [NetId], bottom: &'a mut [NetId], t: Terminal) -> &'a mut NetId {
    match t.side {
        Side::Top => &mut top[t.column],
        Side::Bottom => &mut bottom[t.column],
    }
}
