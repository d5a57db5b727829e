//! Command-line driver.
//!
//! ```text
//! chanroute route <netlist> [--algorithm adaptive|left-edge|dogleg] [--bank FILE]
//!                 [--max-rows N] [--svg FILE] [--dot FILE] [--report FILE] [--seed N]
//! chanroute analyze <netlist> [--dot FILE] [--buckets N]
//! chanroute train --bank FILE [--trials N] [--buckets N] [--seed N]
//! chanroute bench [--instances N] [--bank FILE] [--trials N] [--seed N]
//! ```
//!
//! Exit codes: 0 success, 1 bad arguments or I/O and parse errors, 2 the
//! router gave up, 3 the routing has violations.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{run_bench, BenchOptions};
use crate::constraints::{find_vcg_cycle, ConstraintGraphs};
use crate::export::{netlist_to_dot, render_svg, report, vcg_to_dot, RenderStyle, RunInfo};
use crate::instances::InstanceFamily;
use crate::layout::{metrics, validate, RoutedChannel};
use crate::netlist::{extract_features, parse_netlist, ChannelSpec};
use crate::router::{
    route_adaptive, route_dogleg, route_left_edge, train, CellIndex, RouterConfig, RowSelectionPolicy, StrategyBank,
    TrainingOptions, DEFAULT_BUCKETS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_ROUTING_FAILED: i32 = 2;
pub const EXIT_VIOLATIONS: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "chanroute", version, about = "Two-layer channel router")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    LeftEdge,
    Dogleg,
    Adaptive,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::LeftEdge => "left-edge",
            Algorithm::Dogleg => "dogleg",
            Algorithm::Adaptive => "adaptive",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Route a netlist and write the requested outputs.
    Route {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "adaptive")]
        algorithm: Algorithm,
        /// Strategy bank for the adaptive router (default: middle-out everywhere).
        #[arg(long)]
        bank: Option<PathBuf>,
        /// Track rows; defaults to channel density + 2.
        #[arg(long)]
        max_rows: Option<usize>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Terminal graph of the netlist.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print density, constraint-graph statistics and features.
    Analyze {
        input: PathBuf,
        /// Vertical constraint graph.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUCKETS)]
        buckets: usize,
    },
    /// Train a strategy bank on random instances.
    Train {
        /// Output file.
        #[arg(long)]
        bank: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_BUCKETS)]
        buckets: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare all routers on seeded random instances.
    Bench {
        #[arg(long, default_value_t = 200)]
        instances: usize,
        /// Use this bank instead of training one.
        #[arg(long)]
        bank: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Failed(String);

type Outcome = Result<i32, Failed>;

fn read(path: &Path) -> Result<String, Failed> {
    fs::read_to_string(path).map_err(|e| Failed(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failed> {
    fs::write(path, text).map_err(|e| Failed(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<ChannelSpec, Failed> {
    parse_netlist(&read(path)?).map_err(|e| Failed(format!("{}: {e}", path.display())))
}

fn load_bank(path: &Path) -> Result<StrategyBank, Failed> {
    StrategyBank::parse(&read(path)?).map_err(|e| Failed(format!("{}: {e}", path.display())))
}

/// Parses `args` (program name first) and runs the command. Normal output
/// goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let _ = write!(err, "{e}");
            return EXIT_ERROR;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Route {
            input,
            algorithm,
            bank,
            max_rows,
            svg,
            dot,
            report: report_path,
            seed,
        } => {
            let spec = load_spec(&input)?;
            let bank = bank.as_deref().map(load_bank).transpose()?.unwrap_or_default();
            let graphs = ConstraintGraphs::analyze(&spec);
            let rows = max_rows.unwrap_or(graphs.density + 2);
            if rows == 0 {
                return Err(Failed("--max-rows must be at least 1".into()));
            }
            let cfg = RouterConfig::new(rows).with_seed(seed);
            let result = match algorithm {
                Algorithm::LeftEdge => route_left_edge(&spec, &cfg),
                Algorithm::Dogleg => route_dogleg(&spec, &cfg),
                Algorithm::Adaptive => route_adaptive(&spec, &cfg, &bank),
            };
            let (routed, failure) = match &result {
                Ok(r) => (r.clone(), None),
                Err(e) => (e.partial().cloned().unwrap_or_else(|| RoutedChannel::new(cfg)), Some(e)),
            };
            let violations = validate(&spec, &routed).map_err(|e| Failed(e.to_string()))?;
            let m = metrics(&routed);

            if let Some(path) = &svg {
                write(path, &render_svg(&spec, &routed, &RenderStyle::default()))?;
            }
            if let Some(path) = &dot {
                write(path, &netlist_to_dot(&spec))?;
            }
            if let Some(path) = &report_path {
                let info = RunInfo {
                    router: algorithm.name(),
                    failure,
                };
                write(path, &report(&spec, &routed, &m, &violations, info))?;
            }

            let _ = writeln!(out, "router: {}", algorithm.name());
            let _ = writeln!(out, "max_rows: {rows}");
            let _ = writeln!(out, "density: {}", graphs.density);
            let _ = writeln!(out, "tracks_used: {}", m.tracks_used);
            let _ = writeln!(out, "total_length: {}", m.total_length);
            let _ = writeln!(out, "via_count: {}", m.via_count);
            if let Some(e) = failure {
                let _ = writeln!(out, "status: failed");
                let _ = writeln!(err, "routing failed: {e}");
                return Ok(EXIT_ROUTING_FAILED);
            }
            if !violations.is_empty() {
                let _ = writeln!(out, "status: invalid");
                for v in &violations {
                    let _ = writeln!(err, "violation: {v}");
                }
                return Ok(EXIT_VIOLATIONS);
            }
            let _ = writeln!(out, "status: ok");
            Ok(EXIT_OK)
        }
        Command::Analyze { input, dot, buckets } => {
            if buckets == 0 {
                return Err(Failed("--buckets must be at least 1".into()));
            }
            let spec = load_spec(&input)?;
            let g = ConstraintGraphs::analyze(&spec);
            let f = extract_features(&spec);
            let cell = CellIndex::of(&f, buckets);
            let cycle = match find_vcg_cycle(&g.vcg) {
                Some(c) => c.iter().map(|id| id.to_string()).collect::<Vec<_>>().join(" "),
                None => "none".into(),
            };
            let _ = writeln!(out, "columns: {}", spec.columns());
            let _ = writeln!(out, "nets: {}", spec.net_count());
            let _ = writeln!(out, "terminals: {}", spec.terminal_count());
            let _ = writeln!(out, "density: {}", g.density);
            let _ = writeln!(out, "density_column: {}", g.density_column);
            let _ = writeln!(out, "hcg_nodes: {}", g.hcg.node_count());
            let _ = writeln!(out, "hcg_edges: {}", g.hcg.edge_count());
            let _ = writeln!(out, "vcg_nodes: {}", g.vcg.node_count());
            let _ = writeln!(out, "vcg_edges: {}", g.vcg.edge_count());
            let _ = writeln!(out, "vcg_cycle: {cycle}");
            let _ = writeln!(out, "left_count: {}", f.left_count);
            let _ = writeln!(out, "right_count: {}", f.right_count);
            let _ = writeln!(out, "balance: {:.6}", f.balance);
            let _ = writeln!(out, "bank_cell: {} {}", cell.bucket, cell.band);
            if let Some(path) = &dot {
                write(path, &vcg_to_dot(&g.vcg))?;
            }
            Ok(EXIT_OK)
        }
        Command::Train {
            bank,
            trials,
            buckets,
            seed,
        } => {
            if buckets == 0 || trials == 0 {
                return Err(Failed("--trials and --buckets must be at least 1".into()));
            }
            let opts = TrainingOptions {
                buckets,
                trials,
                seed,
                ..TrainingOptions::default()
            };
            let training = train(&InstanceFamily::bench(), &RowSelectionPolicy::ALL, &opts);
            write(&bank, &training.bank.to_text())?;
            for c in &training.cells {
                let _ = writeln!(
                    out,
                    "cell {} {}: {} ({} instances{})",
                    c.cell.bucket,
                    c.cell.band,
                    c.chosen,
                    c.instances,
                    if c.empty { ", empty" } else { "" }
                );
            }
            Ok(EXIT_OK)
        }
        Command::Bench {
            instances,
            bank,
            trials,
            seed,
        } => {
            if trials == 0 {
                return Err(Failed("--trials must be at least 1".into()));
            }
            let bank = bank.as_deref().map(load_bank).transpose()?;
            let opts = BenchOptions {
                instances,
                seed,
                train_trials: trials,
                ..BenchOptions::default()
            };
            let _ = write!(out, "{}", run_bench(&opts, bank.as_ref()).to_table());
            Ok(EXIT_OK)
        }
    }
}
