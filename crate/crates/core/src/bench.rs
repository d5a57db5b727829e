//! Side-by-side comparison of the routers on seeded random instances.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::instances::InstanceFamily;
use crate::layout::{metrics, validate, RoutedChannel};
use crate::netlist::ChannelSpec;
use crate::router::{
    route_adaptive, route_dogleg, route_left_edge, train_bank, RouteError, RouterConfig, RowSelectionPolicy,
    StrategyBank,
};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOptions {
    pub instances: usize,
    pub seed: u64,
    pub family: InstanceFamily,
    /// Instances per bank cell when no bank is supplied.
    pub train_trials: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            instances: 200,
            seed: 0,
            family: InstanceFamily::bench(),
            train_trials: 20,
        }
    }
}

/// Aggregates for one router. Means are over successful runs only and are
/// `None` when there were none.
#[derive(Debug, Clone, PartialEq)]
pub struct RouterRow {
    pub router: String,
    pub runs: usize,
    pub successes: usize,
    pub mean_tracks: Option<f64>,
    pub mean_length: Option<f64>,
    pub mean_vias: Option<f64>,
}

impl RouterRow {
    pub fn success_rate(&self) -> f64 {
        if self.runs == 0 {
            0.0
        } else {
            self.successes as f64 / self.runs as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<RouterRow>,
}

impl BenchReport {
    pub fn row(&self, router: &str) -> Option<&RouterRow> {
        self.rows.iter().find(|r| r.router == router)
    }

    /// Fixed-width text table, one line per router.
    pub fn to_table(&self) -> String {
        fn cell(x: Option<f64>) -> String {
            x.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"))
        }
        let mut out = format!(
            "{:<26} {:>6} {:>8} {:>8} {:>11} {:>11} {:>9}\n",
            "router", "runs", "success", "rate", "mean_tracks", "mean_length", "mean_vias"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<26} {:>6} {:>8} {:>8.3} {:>11} {:>11} {:>9}",
                r.router,
                r.runs,
                r.successes,
                r.success_rate(),
                cell(r.mean_tracks),
                cell(r.mean_length),
                cell(r.mean_vias)
            );
        }
        out
    }
}

type Router = Box<dyn Fn(&ChannelSpec, &RouterConfig) -> Result<RoutedChannel, RouteError> + Sync>;

fn routers(bank: StrategyBank) -> Vec<(String, Router)> {
    let mut list: Vec<(String, Router)> = vec![
        ("left-edge".into(), Box::new(route_left_edge)),
        ("dogleg".into(), Box::new(route_dogleg)),
        ("adaptive".into(), Box::new(move |s, c| route_adaptive(s, c, &bank))),
    ];
    for policy in RowSelectionPolicy::ALL {
        let fixed = StrategyBank::uniform(policy, 1);
        list.push((
            format!("adaptive[{}]", policy.name()),
            Box::new(move |s, c| route_adaptive(s, c, &fixed)),
        ));
    }
    list
}

/// Instance `i` of a run, drawn from its own stream of `seed`. Even indices
/// come from the acyclic variant of the family so left-edge gets a fair
/// share of routable inputs.
pub fn bench_instance(family: &InstanceFamily, seed: u64, i: usize) -> (ChannelSpec, RouterConfig) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    let fam = family.clone().acyclic(family.acyclic || i % 2 == 0);
    let spec = fam.generate(&mut rng);
    let cfg = fam.config_for(&spec).with_seed(seed);
    (spec, cfg)
}

/// Routes every instance with left-edge, dogleg, the bank-driven adaptive
/// router and the adaptive router under each fixed policy. Without a bank
/// one is trained from `opts.family` first. A run counts as a success only
/// when the router returns a routing with no violations.
pub fn run_bench(opts: &BenchOptions, bank: Option<&StrategyBank>) -> BenchReport {
    let bank = match bank {
        Some(b) => b.clone(),
        None => train_bank(&opts.family, &RowSelectionPolicy::ALL, opts.train_trials, opts.seed),
    };
    let routers = routers(bank);
    let instances: Vec<_> = (0..opts.instances)
        .map(|i| bench_instance(&opts.family, opts.seed, i))
        .collect();

    // outcome[i][r] = Some((tracks, length, vias)) on success
    let outcomes: Vec<Vec<Option<(usize, usize, usize)>>> = instances
        .par_iter()
        .map(|(spec, cfg)| {
            routers
                .iter()
                .map(|(_, route)| {
                    let routed = route(spec, cfg).ok()?;
                    if !validate(spec, &routed).ok()?.is_empty() {
                        return None;
                    }
                    let m = metrics(&routed);
                    Some((m.tracks_used, m.total_length, m.via_count))
                })
                .collect()
        })
        .collect();

    let rows = routers
        .iter()
        .enumerate()
        .map(|(r, (name, _))| {
            let ok: Vec<(usize, usize, usize)> = outcomes.iter().filter_map(|o| o[r]).collect();
            let mean = |f: fn(&(usize, usize, usize)) -> usize| {
                (!ok.is_empty()).then(|| ok.iter().map(f).sum::<usize>() as f64 / ok.len() as f64)
            };
            RouterRow {
                router: name.clone(),
                runs: instances.len(),
                successes: ok.len(),
                mean_tracks: mean(|t| t.0),
                mean_length: mean(|t| t.1),
                mean_vias: mean(|t| t.2),
            }
        })
        .collect();
    BenchReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> BenchOptions {
        BenchOptions {
            instances: 12,
            seed: 3,
            train_trials: 2,
            ..BenchOptions::default()
        }
    }

    #[test]
    fn table_is_deterministic() {
        let a = run_bench(&small(), None).to_table();
        let b = run_bench(&small(), None).to_table();
        assert_eq!(a, b);
    }

    #[test]
    fn rows_cover_every_router() {
        let report = run_bench(&small(), Some(&StrategyBank::default()));
        let names: Vec<&str> = report.rows.iter().map(|r| r.router.as_str()).collect();
        assert_eq!(
            names,
            vec![
                "left-edge",
                "dogleg",
                "adaptive",
                "adaptive[middle_out]",
                "adaptive[top_down]",
                "adaptive[bottom_up]",
                "adaptive[density_weighted]"
            ]
        );
        // the default bank is uniform middle-out
        assert_eq!(report.rows[2].successes, report.rows[3].successes);
        assert!(report.rows.iter().all(|r| r.runs == 12 && r.successes <= 12));
    }
}
