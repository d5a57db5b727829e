use std::collections::{BTreeMap, BTreeSet};

use super::assemble::build_routing;
use super::{decompose_multiterminal, RouteError, RouterConfig};
use crate::constraints::{build_hcg, build_vcg, find_vcg_cycle, Span};
use crate::netlist::{nets_of, ChannelSpec, Net, NetId};

/// Constrained left-edge: fills rows from `max_rows` downward, packing
/// trunks by leftmost column, and admits a trunk only once all of its VCG
/// predecessors sit in strictly higher rows.
///
/// With `dogleg_enabled`, a cyclic VCG falls back to [`route_dogleg`].
pub fn route_left_edge(spec: &ChannelSpec, cfg: &RouterConfig) -> Result<crate::layout::RoutedChannel, RouteError> {
    let nets = nets_of(spec);
    match pack_rows(&nets, &nets, cfg) {
        Err(RouteError::CyclicVcg { .. }) if cfg.dogleg_enabled => route_dogleg(spec, cfg),
        other => other,
    }
}

/// Left-edge packing over the subnets of [`decompose_multiterminal`]. Pieces
/// of one net on different rows meet through a vertical dogleg at their
/// shared column.
pub fn route_dogleg(spec: &ChannelSpec, cfg: &RouterConfig) -> Result<crate::layout::RoutedChannel, RouteError> {
    let nets = nets_of(spec);
    let subnets = decompose_multiterminal(&nets);
    pack_rows(&nets, &subnets, cfg)
}

fn pack_rows<T: Span>(
    nets: &[Net],
    spans: &[T],
    cfg: &RouterConfig,
) -> Result<crate::layout::RoutedChannel, RouteError> {
    let vcg = build_vcg(spans);
    if let Some(cycle) = find_vcg_cycle(&vcg) {
        let parents: BTreeMap<T::Key, NetId> = spans.iter().map(|s| (s.key(), s.parent())).collect();
        return Err(RouteError::CyclicVcg {
            cycle: cycle.iter().map(|k| parents[k]).collect(),
        });
    }
    let hcg = build_hcg(spans);

    let mut pending: Vec<&T> = spans.iter().filter(|s| s.needs_trunk()).collect();
    pending.sort_by_key(|s| (s.leftmost(), s.key()));

    let mut rows: BTreeMap<T::Key, usize> = BTreeMap::new();
    let mut settled: BTreeSet<T::Key> = BTreeSet::new();
    let mut row = cfg.max_rows;
    while !pending.is_empty() && row >= cfg.min_row.max(1) {
        let mut in_row: Vec<T::Key> = Vec::new();
        pending.retain(|s| {
            let key = s.key();
            let ready = vcg.predecessors(key).all(|p| settled.contains(&p));
            let free = in_row.iter().all(|&q| !hcg.has_edge(key, q));
            if ready && free {
                in_row.push(key);
                rows.insert(key, row);
                false
            } else {
                true
            }
        });
        settled.extend(in_row);
        row -= 1;
    }

    let (routed, _) = build_routing(nets, spans, &rows, *cfg);
    if pending.is_empty() {
        Ok(routed)
    } else {
        let unplaced = pending.len();
        Err(RouteError::RowsExhausted {
            max_rows: cfg.max_rows,
            unplaced,
            partial: Box::new(routed),
        })
    }
}
