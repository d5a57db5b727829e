//! JSON run report. Keys appear in this fixed order:
//!
//! ```text
//! router, status, failure, instance{columns, nets, terminals, density,
//! density_column}, max_rows, metrics{layers_used, tracks_used,
//! total_length, via_count}, violations[]
//! ```
//!
//! `status` is `ok`, `failed` or `invalid`. `failure` is `null` unless the
//! router gave up, in which case metrics describe the partial routing.

use serde::Serialize;

use crate::constraints::channel_density;
use crate::layout::{Metrics, RoutedChannel, Violation};
use crate::netlist::ChannelSpec;
use crate::router::RouteError;

/// What produced the routing being reported.
#[derive(Debug, Clone, Copy)]
pub struct RunInfo<'a> {
    pub router: &'a str,
    pub failure: Option<&'a RouteError>,
}

#[derive(Serialize)]
struct Failure {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct Instance {
    columns: usize,
    nets: usize,
    terminals: usize,
    density: usize,
    density_column: usize,
}

#[derive(Serialize)]
struct Report<'a> {
    router: &'a str,
    status: &'static str,
    failure: Option<Failure>,
    instance: Instance,
    max_rows: usize,
    metrics: &'a Metrics,
    violations: &'a [Violation],
}

pub fn report(spec: &ChannelSpec, routed: &RoutedChannel, m: &Metrics, violations: &[Violation], run: RunInfo<'_>) -> String {
    let (density, density_column) = channel_density(spec);
    let status = match (run.failure, violations.is_empty()) {
        (Some(_), _) => "failed",
        (None, false) => "invalid",
        (None, true) => "ok",
    };
    let doc = Report {
        router: run.router,
        status,
        failure: run.failure.map(|e| Failure {
            kind: e.kind(),
            message: e.to_string(),
        }),
        instance: Instance {
            columns: spec.columns(),
            nets: spec.net_count(),
            terminals: spec.terminal_count(),
            density,
            density_column,
        },
        max_rows: routed.config.max_rows,
        metrics: m,
        violations,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}
