//! Brute-force oracles shared by the integration targets. They work from
//! the raw terminal rows, never from library graph code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use chanroute::netlist::{ChannelSpec, NetId};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Column extent of every net, read straight off the rows.
pub fn extents(spec: &ChannelSpec) -> BTreeMap<NetId, (usize, usize)> {
    let mut ext: BTreeMap<NetId, (usize, usize)> = BTreeMap::new();
    for c in 0..spec.columns() {
        for id in [spec.top()[c], spec.bottom()[c]] {
            if id != 0 {
                let e = ext.entry(id).or_insert((c, c));
                e.0 = e.0.min(c);
                e.1 = e.1.max(c);
            }
        }
    }
    ext
}

/// Max nets crossing any column, and the first column reaching it.
pub fn density(spec: &ChannelSpec) -> (usize, usize) {
    let ext = extents(spec);
    let mut best = (0, 0);
    for c in 0..spec.columns() {
        let n = ext.values().filter(|&&(l, r)| l <= c && c <= r).count();
        if n > best.0 {
            best = (n, c);
        }
    }
    best
}

pub fn hcg_edges(spec: &ChannelSpec) -> BTreeSet<(NetId, NetId)> {
    let ext: Vec<(NetId, (usize, usize))> = extents(spec).into_iter().collect();
    let mut edges = BTreeSet::new();
    for i in 0..ext.len() {
        for j in i + 1..ext.len() {
            let (a, (l1, r1)) = ext[i];
            let (b, (l2, r2)) = ext[j];
            if l1 <= r2 && l2 <= r1 {
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    edges
}

pub fn vcg_edges(spec: &ChannelSpec) -> BTreeSet<(NetId, NetId)> {
    (0..spec.columns())
        .map(|c| (spec.top()[c], spec.bottom()[c]))
        .filter(|&(t, b)| t != 0 && b != 0 && t != b)
        .collect()
}

/// Fewest rows into which the intervals can be packed without two
/// overlapping intervals sharing a row, by exhaustive assignment.
pub fn min_rows(intervals: &[(usize, usize)]) -> usize {
    fn fits(intervals: &[(usize, usize)], rows: &mut Vec<usize>, k: usize) -> bool {
        let i = rows.len();
        if i == intervals.len() {
            return true;
        }
        for r in 0..k {
            let clash = (0..i).any(|j| {
                rows[j] == r && intervals[j].0 <= intervals[i].1 && intervals[i].0 <= intervals[j].1
            });
            if !clash {
                rows.push(r);
                if fits(intervals, rows, k) {
                    return true;
                }
                rows.pop();
            }
        }
        false
    }
    (0..=intervals.len())
        .find(|&k| fits(intervals, &mut Vec::new(), k))
        .unwrap()
}

/// Random instance with no column holding two different nets, so the
/// vertical constraint graph is empty. Every net spans at least two
/// columns.
pub fn vcg_free_instance(rng: &mut ChaCha8Rng, max_nets: usize) -> ChannelSpec {
    let nets = rng.gen_range(1..=max_nets);
    let columns = rng.gen_range(2 * nets + 2..=4 * nets + 6);
    let mut free: Vec<usize> = (0..columns).collect();
    let mut top = vec![0; columns];
    let mut bottom = vec![0; columns];
    for id in 1..=nets as NetId {
        let k = if rng.gen_bool(0.2) { 3 } else { 2 };
        if free.len() < k {
            break;
        }
        for _ in 0..k {
            let c = free.swap_remove(rng.gen_range(0..free.len()));
            if rng.gen_bool(0.5) {
                top[c] = id;
            } else {
                bottom[c] = id;
            }
        }
    }
    ChannelSpec::new(top, bottom).unwrap()
}

/// Unconstrained random rows, possibly with stacked same-net columns and
/// cycles.
pub fn wild_instance(rng: &mut ChaCha8Rng) -> ChannelSpec {
    loop {
        let columns = rng.gen_range(1..=30);
        let nets = rng.gen_range(1..=12);
        let mut row = || -> Vec<NetId> {
            (0..columns)
                .map(|_| if rng.gen_bool(0.35) { 0 } else { rng.gen_range(1..=nets) })
                .collect()
        };
        let (top, bottom) = (row(), row());
        if let Ok(spec) = ChannelSpec::new(top, bottom) {
            return spec;
        }
    }
}

/// Density counting only nets that span more than one column, i.e. the
/// ones that need a trunk.
pub fn trunk_density(spec: &ChannelSpec) -> usize {
    let ext = extents(spec);
    (0..spec.columns())
        .map(|c| ext.values().filter(|&&(l, r)| l < r && l <= c && c <= r).count())
        .max()
        .unwrap_or(0)
}
