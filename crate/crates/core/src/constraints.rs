//! Horizontal and vertical constraint graphs over nets (or over the subnets
//! produced by dogleg decomposition), cycle detection and channel density.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::netlist::{nets_of, ChannelSpec, Net, NetId, Side, Terminal};

/// Anything that occupies a horizontal column interval and owns terminals:
/// a whole net, or one piece of a decomposed net.
pub trait Span {
    type Key: Ord + Copy + fmt::Debug + fmt::Display;

    fn key(&self) -> Self::Key;
    /// Net this span belongs to. Spans sharing a parent never conflict.
    fn parent(&self) -> NetId;
    fn terminals(&self) -> &[Terminal];
    fn leftmost(&self) -> usize;
    fn rightmost(&self) -> usize;

    fn needs_trunk(&self) -> bool {
        self.leftmost() < self.rightmost()
    }
}

impl Span for Net {
    type Key = NetId;

    fn key(&self) -> NetId {
        self.id
    }
    fn parent(&self) -> NetId {
        self.id
    }
    fn terminals(&self) -> &[Terminal] {
        &self.terminals
    }
    fn leftmost(&self) -> usize {
        self.leftmost
    }
    fn rightmost(&self) -> usize {
        self.rightmost
    }
}

/// Undirected interval-overlap graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hcg<K: Ord + Copy = NetId> {
    adj: BTreeMap<K, BTreeSet<K>>,
}

impl<K: Ord + Copy> Hcg<K> {
    pub fn nodes(&self) -> impl Iterator<Item = K> + '_ {
        self.adj.keys().copied()
    }

    pub fn neighbors(&self, k: K) -> impl Iterator<Item = K> + '_ {
        self.adj.get(&k).into_iter().flatten().copied()
    }

    pub fn has_edge(&self, a: K, b: K) -> bool {
        self.adj.get(&a).is_some_and(|s| s.contains(&b))
    }

    /// Each edge once, as `(a, b)` with `a < b`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (K, K)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&a, s)| s.range(a..).filter(move |&&b| b != a).map(move |&b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }
}

/// Directed above/below graph: `a -> b` means `a`'s trunk must sit above `b`'s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vcg<K: Ord + Copy = NetId> {
    succ: BTreeMap<K, BTreeSet<K>>,
    pred: BTreeMap<K, BTreeSet<K>>,
}

impl<K: Ord + Copy> Vcg<K> {
    pub fn from_edges(nodes: impl IntoIterator<Item = K>, edges: impl IntoIterator<Item = (K, K)>) -> Self {
        let mut g = Vcg {
            succ: BTreeMap::new(),
            pred: BTreeMap::new(),
        };
        for n in nodes {
            g.add_node(n);
        }
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    fn add_node(&mut self, n: K) {
        self.succ.entry(n).or_default();
        self.pred.entry(n).or_default();
    }

    fn add_edge(&mut self, a: K, b: K) {
        self.add_node(a);
        self.add_node(b);
        self.succ.get_mut(&a).unwrap().insert(b);
        self.pred.get_mut(&b).unwrap().insert(a);
    }

    pub fn nodes(&self) -> impl Iterator<Item = K> + '_ {
        self.succ.keys().copied()
    }

    pub fn successors(&self, k: K) -> impl Iterator<Item = K> + '_ {
        self.succ.get(&k).into_iter().flatten().copied()
    }

    pub fn predecessors(&self, k: K) -> impl Iterator<Item = K> + '_ {
        self.pred.get(&k).into_iter().flatten().copied()
    }

    pub fn has_edge(&self, a: K, b: K) -> bool {
        self.succ.get(&a).is_some_and(|s| s.contains(&b))
    }

    /// Edges in ascending `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = (K, K)> + '_ {
        self.succ
            .iter()
            .flat_map(|(&a, s)| s.iter().map(move |&b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.values().map(BTreeSet::len).sum()
    }

    pub fn node_count(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_count() == 0
    }

    /// Transitive closure, for ancestor/descendant queries.
    pub fn closure(&self) -> Reachability<K> {
        let index: BTreeMap<K, usize> = self.nodes().enumerate().map(|(i, k)| (k, i)).collect();
        let n = index.len();
        let mut reach = vec![vec![false; n]; n];
        for (&start, &si) in &index {
            let mut stack: Vec<K> = self.successors(start).collect();
            while let Some(k) = stack.pop() {
                let ki = index[&k];
                if !reach[si][ki] {
                    reach[si][ki] = true;
                    stack.extend(self.successors(k));
                }
            }
        }
        Reachability { index, reach }
    }
}

#[derive(Debug, Clone)]
pub struct Reachability<K: Ord + Copy> {
    index: BTreeMap<K, usize>,
    reach: Vec<Vec<bool>>,
}

impl<K: Ord + Copy> Reachability<K> {
    /// True when a directed path of length ≥ 1 leads from `from` to `to`.
    pub fn reaches(&self, from: K, to: K) -> bool {
        match (self.index.get(&from), self.index.get(&to)) {
            (Some(&a), Some(&b)) => self.reach[a][b],
            _ => false,
        }
    }
}

pub fn build_hcg<T: Span>(spans: &[T]) -> Hcg<T::Key> {
    let mut adj: BTreeMap<T::Key, BTreeSet<T::Key>> =
        spans.iter().map(|s| (s.key(), BTreeSet::new())).collect();
    let mut order: Vec<&T> = spans.iter().collect();
    order.sort_by_key(|s| (s.leftmost(), s.key()));
    // sweep: `active` holds spans whose interval may still reach the cursor
    let mut active: Vec<&T> = Vec::new();
    for s in order {
        active.retain(|a| a.rightmost() >= s.leftmost());
        for a in &active {
            if a.parent() != s.parent() {
                adj.get_mut(&a.key()).unwrap().insert(s.key());
                adj.get_mut(&s.key()).unwrap().insert(a.key());
            }
        }
        active.push(s);
    }
    Hcg { adj }
}

pub fn build_vcg<T: Span>(spans: &[T]) -> Vcg<T::Key> {
    // column -> (spans with a top terminal there, spans with a bottom terminal there)
    let mut by_column: BTreeMap<usize, (Vec<&T>, Vec<&T>)> = BTreeMap::new();
    for s in spans {
        for t in s.terminals() {
            let slot = by_column.entry(t.column).or_default();
            match t.side {
                Side::Top => slot.0.push(s),
                Side::Bottom => slot.1.push(s),
            }
        }
    }
    let mut edges = Vec::new();
    for (above, below) in by_column.values() {
        for a in above {
            for b in below {
                if a.parent() != b.parent() {
                    edges.push((a.key(), b.key()));
                }
            }
        }
    }
    Vcg::from_edges(spans.iter().map(Span::key), edges)
}

/// Some directed cycle of `vcg`, rotated to start at its smallest node.
pub fn find_vcg_cycle<K: Ord + Copy>(vcg: &Vcg<K>) -> Option<Vec<K>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Fresh,
        Open,
        Done,
    }
    let mut mark: BTreeMap<K, Mark> = vcg.nodes().map(|k| (k, Mark::Fresh)).collect();

    for root in vcg.nodes() {
        if mark[&root] != Mark::Fresh {
            continue;
        }
        // path + per-frame successor iterators
        let mut path: Vec<K> = vec![root];
        let mut frames: Vec<Vec<K>> = vec![vcg.successors(root).collect::<Vec<_>>()];
        frames[0].reverse();
        mark.insert(root, Mark::Open);
        while let Some(frame) = frames.last_mut() {
            match frame.pop() {
                Some(next) => match mark[&next] {
                    Mark::Fresh => {
                        mark.insert(next, Mark::Open);
                        path.push(next);
                        let mut succ: Vec<K> = vcg.successors(next).collect();
                        succ.reverse();
                        frames.push(succ);
                    }
                    Mark::Open => {
                        let start = path.iter().position(|&k| k == next).unwrap();
                        let mut cycle = path[start..].to_vec();
                        let min_at = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap();
                        cycle.rotate_left(min_at);
                        return Some(cycle);
                    }
                    Mark::Done => {}
                },
                None => {
                    let done = path.pop().unwrap();
                    mark.insert(done, Mark::Done);
                    frames.pop();
                }
            }
        }
    }
    None
}

/// Maximum number of distinct nets whose span covers one column, with
/// the smallest column attaining it. Spans of the same parent count once.
pub fn density_of<T: Span>(spans: &[T], columns: usize) -> (usize, usize) {
    let mut parent_span: BTreeMap<NetId, (usize, usize)> = BTreeMap::new();
    for s in spans {
        let e = parent_span
            .entry(s.parent())
            .or_insert((s.leftmost(), s.rightmost()));
        e.0 = e.0.min(s.leftmost());
        e.1 = e.1.max(s.rightmost());
    }
    let width = columns.max(parent_span.values().map(|&(_, r)| r + 1).max().unwrap_or(0));
    let mut delta = vec![0isize; width + 1];
    for &(l, r) in parent_span.values() {
        delta[l] += 1;
        delta[r + 1] -= 1;
    }
    let (mut best, mut at, mut running) = (0usize, 0usize, 0isize);
    for (c, d) in delta.iter().take(width).enumerate() {
        running += d;
        if running as usize > best {
            best = running as usize;
            at = c;
        }
    }
    (best, at)
}

/// `(density, witness_column)`; `(0, 0)` when the channel has no nets.
pub fn channel_density(spec: &ChannelSpec) -> (usize, usize) {
    density_of(&nets_of(spec), spec.columns())
}

/// Both constraint graphs plus the density bound for one instance.
#[derive(Debug, Clone)]
pub struct ConstraintGraphs {
    pub hcg: Hcg,
    pub vcg: Vcg,
    pub density: usize,
    pub density_column: usize,
}

impl ConstraintGraphs {
    pub fn analyze(spec: &ChannelSpec) -> Self {
        let nets = nets_of(spec);
        let (density, density_column) = density_of(&nets, spec.columns());
        ConstraintGraphs {
            hcg: build_hcg(&nets),
            vcg: build_vcg(&nets),
            density,
            density_column,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::parse_netlist;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec(top: &str, bot: &str) -> ChannelSpec {
        parse_netlist(&format!("TOP: {top}\nBOT: {bot}")).unwrap()
    }

    fn net(id: NetId, terminals: &[Terminal]) -> Net {
        Net::new(id, terminals.to_vec()).unwrap()
    }

    #[test]
    fn disjoint_intervals_no_edge() {
        let nets = [
            net(1, &[Terminal::top(0), Terminal::top(2)]),
            net(2, &[Terminal::top(3), Terminal::top(5)]),
        ];
        assert_eq!(build_hcg(&nets).edge_count(), 0);
    }

    #[test]
    fn overlapping_intervals_edge() {
        let nets = [
            net(1, &[Terminal::top(0), Terminal::top(3)]),
            net(2, &[Terminal::top(2), Terminal::top(5)]),
        ];
        let hcg = build_hcg(&nets);
        assert!(hcg.has_edge(1, 2) && hcg.has_edge(2, 1));
        assert!(!hcg.has_edge(1, 1));
    }

    #[test]
    fn touching_endpoints_overlap() {
        let nets = [
            net(1, &[Terminal::top(0), Terminal::top(2)]),
            net(2, &[Terminal::top(2), Terminal::bottom(4)]),
        ];
        assert!(build_hcg(&nets).has_edge(1, 2));
    }

    #[test]
    fn vcg_edge_from_shared_column() {
        // column 0: net 0's stand-in (id 3) above net 2
        let s = spec("3 0 3", "2 2 0");
        let vcg = build_vcg(&nets_of(&s));
        assert_eq!(vcg.edges().collect::<Vec<_>>(), vec![(3, 2)]);
    }

    #[test]
    fn vcg_empty_without_stacked_columns() {
        let s = spec("1 0 1 0", "0 2 0 2");
        assert!(build_vcg(&nets_of(&s)).is_empty());
    }

    #[test]
    fn vcg_two_cycle() {
        let s = spec("1 2", "2 1");
        let vcg = build_vcg(&nets_of(&s));
        assert_eq!(vcg.edges().collect::<Vec<_>>(), vec![(1, 2), (2, 1)]);
        assert_eq!(find_vcg_cycle(&vcg), Some(vec![1, 2]));
    }

    #[test]
    fn acyclic_chain_has_no_cycle() {
        let vcg = Vcg::from_edges([0u32, 2, 5], [(0, 2), (2, 5)]);
        assert_eq!(find_vcg_cycle(&vcg), None);
    }

    #[test]
    fn cycle_rotated_to_smallest() {
        let vcg = Vcg::from_edges([1u32, 4, 7, 9], [(9, 4), (4, 7), (7, 9), (1, 9)]);
        assert_eq!(find_vcg_cycle(&vcg), Some(vec![4, 7, 9]));
    }

    #[test]
    fn density_examples() {
        assert_eq!(channel_density(&spec("1 0 1", "0 0 0")), (1, 0));
        assert_eq!(channel_density(&spec("1 2 0 2", "0 1 0 0")), (2, 1));
        assert_eq!(channel_density(&spec("0 0", "0 0")), (0, 0));
    }

    #[test]
    fn closure_is_transitive() {
        let vcg = Vcg::from_edges([1u32, 2, 3, 4], [(1, 2), (2, 3)]);
        let r = vcg.closure();
        assert!(r.reaches(1, 3));
        assert!(!r.reaches(3, 1));
        assert!(!r.reaches(1, 4));
        assert!(!r.reaches(1, 1));
    }

    fn reaches_oracle(edges: &[(u32, u32)], from: u32, to: u32, n: u32) -> bool {
        // breadth-first over all nodes
        let mut seen = vec![false; n as usize];
        let mut frontier: Vec<u32> = edges.iter().filter(|e| e.0 == from).map(|e| e.1).collect();
        while let Some(k) = frontier.pop() {
            if k == to {
                return true;
            }
            if !seen[k as usize] {
                seen[k as usize] = true;
                frontier.extend(edges.iter().filter(|e| e.0 == k).map(|e| e.1));
            }
        }
        false
    }

    #[test]
    fn cycle_detection_matches_reachability_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..400 {
            let n: u32 = rng.gen_range(1..=12);
            let p: f64 = rng.gen_range(0.02..0.3);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if a != b && rng.gen_bool(p) {
                        edges.push((a, b));
                    }
                }
            }
            let vcg = Vcg::from_edges(0..n, edges.iter().copied());
            let oracle = (0..n).any(|k| reaches_oracle(&edges, k, k, n));
            let found = find_vcg_cycle(&vcg);
            assert_eq!(found.is_some(), oracle, "edges {edges:?}");
            if let Some(cycle) = found {
                assert_eq!(cycle[0], *cycle.iter().min().unwrap());
                for i in 0..cycle.len() {
                    assert!(vcg.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
                }
            }
        }
    }
}
