use std::collections::BTreeMap;

use super::assemble::build_routing;
use super::{decompose_multiterminal, RouteError, RouterConfig, RowSelectionPolicy, StrategyBank};
use crate::constraints::{build_hcg, build_vcg, Hcg, Reachability, Span};
use crate::layout::RoutedChannel;
use crate::netlist::{extract_features, nets_of, ChannelSpec, FeatureVector};

/// Trunks placed so far, indexed both ways.
#[derive(Debug, Clone)]
pub struct TrackState<K: Ord + Copy> {
    rows: BTreeMap<K, usize>,
    by_row: BTreeMap<usize, Vec<K>>,
}

impl<K: Ord + Copy> Default for TrackState<K> {
    fn default() -> Self {
        TrackState {
            rows: BTreeMap::new(),
            by_row: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Copy> TrackState<K> {
    pub fn place(&mut self, key: K, row: usize) {
        self.rows.insert(key, row);
        self.by_row.entry(row).or_default().push(key);
    }

    pub fn row_of(&self, key: K) -> Option<usize> {
        self.rows.get(&key).copied()
    }

    pub fn occupied(&self, row: usize) -> bool {
        self.by_row.get(&row).is_some_and(|v| !v.is_empty())
    }

    pub fn rows(&self) -> &BTreeMap<K, usize> {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Picks the row for the next trunk: the first row, in the order of the
/// bank's policy for `features`, where `pending` overlaps no placed trunk
/// of another net and sits strictly below every placed VCG ancestor and
/// strictly above every placed descendant.
pub fn select_row<K: Ord + Copy>(
    pending: K,
    vcg: &Reachability<K>,
    hcg: &Hcg<K>,
    features: &FeatureVector,
    state: &TrackState<K>,
    cfg: &RouterConfig,
    bank: &StrategyBank,
) -> Option<usize> {
    let policy = bank.policy_for(features);
    // tightest window allowed by placed ancestors / descendants
    let mut above = usize::MAX; // rows must be < this
    let mut below = 0usize; // rows must be > this
    for (&q, &rq) in &state.rows {
        if vcg.reaches(q, pending) {
            above = above.min(rq);
        }
        if vcg.reaches(pending, q) {
            below = below.max(rq);
        }
    }
    policy
        .candidate_rows(cfg, |r| state.occupied(r))
        .into_iter()
        .filter(|&r| r > below && r < above)
        .find(|r| {
            state
                .by_row
                .get(r)
                .is_none_or(|keys| keys.iter().all(|&q| !hcg.has_edge(pending, q)))
        })
}

/// Routes subnets one at a time in leftmost-terminal order. A subnet whose
/// terminals share a column becomes a single vertical wire; any other gets
/// a drop, a trunk on the current row and a rise, after which the next
/// trunk's row is chosen by [`select_row`]. The first trunk goes on
/// `floor(max_rows / 2)` (row 1 when that would be the terminal edge).
pub fn route_adaptive(
    spec: &ChannelSpec,
    cfg: &RouterConfig,
    bank: &StrategyBank,
) -> Result<RoutedChannel, RouteError> {
    let nets = nets_of(spec);
    let features = extract_features(spec);
    let subnets = decompose_multiterminal(&nets);
    let vcg = build_vcg(&subnets).closure();
    let hcg = build_hcg(&subnets);

    let mut order: Vec<_> = subnets.iter().filter(|s| s.needs_trunk()).collect();
    order.sort_by_key(|s| (s.leftmost, s.key));

    let mut state = TrackState::default();
    let mut row = RowSelectionPolicy::middle_row(cfg);
    for (i, sub) in order.iter().enumerate() {
        state.place(sub.key, row);
        let Some(next) = order.get(i + 1) else { break };
        match select_row(next.key, &vcg, &hcg, &features, &state, cfg, bank) {
            Some(r) => row = r,
            None => {
                let (partial, _) = build_routing(&nets, &subnets, state.rows(), *cfg);
                return Err(RouteError::RowsExhausted {
                    max_rows: cfg.max_rows,
                    unplaced: order.len() - i - 1,
                    partial: Box::new(partial),
                });
            }
        }
    }
    Ok(build_routing(&nets, &subnets, state.rows(), *cfg).0)
}
