use std::collections::{BTreeMap, BTreeSet};

use super::RouterConfig;
use crate::constraints::Span;
use crate::layout::{RoutedChannel, Segment};
use crate::netlist::{Net, NetId, Side, Terminal};

/// Turns a row assignment of trunk-bearing spans into routed geometry.
/// Nets with a gap that has no assigned row are left out; the second value
/// counts them.
pub(crate) fn build_routing<T: Span>(
    nets: &[Net],
    spans: &[T],
    rows: &BTreeMap<T::Key, usize>,
    cfg: RouterConfig,
) -> (RoutedChannel, usize) {
    let mut gaps: BTreeMap<NetId, BTreeMap<usize, usize>> = BTreeMap::new();
    for s in spans {
        let Some(&row) = rows.get(&s.key()) else { continue };
        let cols: BTreeSet<usize> = s.terminals().iter().map(|t| t.column).collect();
        let cols: Vec<usize> = cols.into_iter().collect();
        let entry = gaps.entry(s.parent()).or_default();
        for w in cols.windows(2) {
            entry.insert(w[0], row);
        }
    }
    let mut routed = RoutedChannel::new(cfg);
    let mut missing = 0;
    for net in nets {
        let cols: BTreeSet<usize> = net.terminals.iter().map(|t| t.column).collect();
        let starts: Vec<usize> = cols.iter().copied().take(cols.len().saturating_sub(1)).collect();
        let known = gaps.get(&net.id);
        let gap_rows: Option<Vec<usize>> = starts
            .iter()
            .map(|c| known.and_then(|g| g.get(c)).copied())
            .collect();
        match gap_rows {
            Some(gap_rows) => {
                routed.insert_net(net.id, assemble_net(&net.terminals, &gap_rows, cfg.top_row()))
            }
            None => missing += 1,
        }
    }
    (routed, missing)
}

/// Builds the ordered segment path of one net.
///
/// `gap_rows[i]` is the track row of the trunk between the i-th and
/// (i+1)-th distinct terminal columns. At every terminal column a vertical
/// wire joins the terminals there with the adjoining trunks; when the two
/// trunks sit on different rows the vertical doubles as a dogleg. Vertical
/// wires are split at trunk rows so every junction is a segment endpoint,
/// and the emitted order keeps consecutive segments touching.
pub(crate) fn assemble_net(terminals: &[Terminal], gap_rows: &[usize], top_row: usize) -> Vec<Segment> {
    let columns: Vec<usize> = terminals
        .iter()
        .map(|t| t.column)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    debug_assert_eq!(gap_rows.len() + 1, columns.len().max(1));

    let edge_rows = |c: usize| -> Vec<usize> {
        let mut rows: Vec<usize> = terminals
            .iter()
            .filter(|t| t.column == c)
            .map(|t| match t.side {
                Side::Top => top_row,
                Side::Bottom => 0,
            })
            .collect();
        // top terminal first
        rows.sort_unstable_by(|a, b| b.cmp(a));
        rows
    };

    if columns.len() <= 1 {
        let c = columns.first().copied().unwrap_or(0);
        let rows = edge_rows(c);
        return match rows.as_slice() {
            [a, b, ..] => vec![Segment::vertical(c, *a, *b)],
            _ => Vec::new(),
        };
    }

    let last = columns.len() - 1;
    let mut out = Vec::new();
    for (i, &c) in columns.iter().enumerate() {
        let pins = edge_rows(c);
        if i == 0 {
            let right = gap_rows[0];
            out.extend(pins.iter().map(|&r| Segment::vertical(c, r, right)));
        } else {
            let left = gap_rows[i - 1];
            let right = if i < last { Some(gap_rows[i]) } else { None };
            match right {
                None => out.extend(pins.iter().map(|&r| Segment::vertical(c, left, r))),
                Some(right) if right == left => {
                    out.extend(pins.iter().map(|&r| Segment::vertical(c, r, left)))
                }
                Some(right) => {
                    // each pin hangs off whichever trunk row lies on its side
                    let near_left = |r: usize| (r < left) == (left < right);
                    out.extend(
                        pins.iter()
                            .filter(|&&r| near_left(r))
                            .map(|&r| Segment::vertical(c, left, r)),
                    );
                    out.push(Segment::vertical(c, left, right));
                    out.extend(
                        pins.iter()
                            .filter(|&&r| !near_left(r))
                            .map(|&r| Segment::vertical(c, right, r)),
                    );
                }
            }
        }
        if i < last {
            out.push(Segment::horizontal(gap_rows[i], c, columns[i + 1]));
        }
    }
    debug_assert!(out.windows(2).all(|w| w[0].joint(&w[1]).is_some()));
    debug_assert!(out.iter().all(|s| s.p0 != s.p1));
    out
}
