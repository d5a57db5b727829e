use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use super::{GridPoint, RoutedChannel, Segment, HORIZONTAL_LAYER, VERTICAL_LAYER};
use crate::netlist::{nets_of, ChannelSpec, NetId, Terminal};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    /// Two nets cover the same grid point on the same layer.
    ShortCircuit {
        net_a: NetId,
        net_b: NetId,
        point: GridPoint,
        layer: u8,
    },
    /// A terminal is not reachable from the net's first terminal.
    Disconnected { net: NetId, unreached: Terminal },
    /// Geometry of a net that touches none of its terminals.
    Stray { net: NetId, at: GridPoint },
    OutOfBounds { net: NetId, segment: Segment },
    WrongOrientation { net: NetId, segment: Segment },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::ShortCircuit {
                net_a,
                net_b,
                point,
                layer,
            } => write!(f, "short between nets {net_a} and {net_b} at {point} on layer {layer}"),
            Violation::Disconnected { net, unreached } => {
                write!(f, "net {net} does not reach terminal {unreached}")
            }
            Violation::Stray { net, at } => write!(f, "net {net} has stray geometry at {at}"),
            Violation::OutOfBounds { net, segment } => {
                write!(f, "net {net} segment {segment} out of bounds")
            }
            Violation::WrongOrientation { net, segment } => {
                write!(f, "net {net} segment {segment} has the wrong orientation for its layer")
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidateError {
    #[error("routing references net {0}, which is not in the channel")]
    UnknownNet(NetId),
}

type Node = (u8, GridPoint);

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Checks connectivity, isolation between nets, bounds and layer
/// orientation. An empty result means the routing is clean.
pub fn validate(spec: &ChannelSpec, routed: &RoutedChannel) -> Result<Vec<Violation>, ValidateError> {
    let nets = nets_of(spec);
    let terminals_of: BTreeMap<NetId, Vec<Terminal>> =
        nets.into_iter().map(|n| (n.id, n.terminals)).collect();
    if let Some(id) = routed
        .tracks
        .keys()
        .chain(routed.vias.keys())
        .find(|id| !terminals_of.contains_key(id))
    {
        return Err(ValidateError::UnknownNet(*id));
    }

    let top_row = routed.config.top_row();
    let in_bounds = |p: GridPoint| p.column < spec.columns() && p.row <= top_row;
    let mut violations = Vec::new();
    let mut owner: HashMap<Node, NetId> = HashMap::new();
    let mut reported: BTreeSet<(NetId, NetId, u8)> = BTreeSet::new();

    for (&net, terminals) in &terminals_of {
        let segments: &[Segment] = routed.tracks.get(&net).map(Vec::as_slice).unwrap_or(&[]);
        let vias = routed.vias.get(&net).map(Vec::as_slice).unwrap_or(&[]);

        // nodes in first-seen order, plus adjacency along segments
        let mut index: HashMap<Node, usize> = HashMap::new();
        let mut order: Vec<Node> = Vec::new();
        let mut links: Vec<(Node, Node)> = Vec::new();
        let intern = |n: Node, index: &mut HashMap<Node, usize>, order: &mut Vec<Node>| {
            *index.entry(n).or_insert_with(|| {
                order.push(n);
                order.len() - 1
            })
        };

        for seg in segments {
            let oriented = match seg.layer {
                VERTICAL_LAYER => seg.p0.column == seg.p1.column,
                HORIZONTAL_LAYER => seg.p0.row == seg.p1.row,
                _ => false,
            };
            if !oriented {
                violations.push(Violation::WrongOrientation { net, segment: *seg });
            }
            let track_ok = seg.layer != HORIZONTAL_LAYER
                || !seg.is_horizontal()
                || routed.config.track_rows().contains(&seg.p0.row);
            if !in_bounds(seg.p0) || !in_bounds(seg.p1) || !track_ok {
                violations.push(Violation::OutOfBounds { net, segment: *seg });
            }
            if !oriented {
                continue;
            }
            let pts: Vec<GridPoint> = seg.points().into_iter().filter(|&p| in_bounds(p)).collect();
            for &p in &pts {
                intern((seg.layer, p), &mut index, &mut order);
            }
            for w in pts.windows(2) {
                links.push(((seg.layer, w[0]), (seg.layer, w[1])));
            }
        }
        for via in vias {
            if !in_bounds(via.at) {
                continue;
            }
            intern((VERTICAL_LAYER, via.at), &mut index, &mut order);
            intern((HORIZONTAL_LAYER, via.at), &mut index, &mut order);
            links.push(((VERTICAL_LAYER, via.at), (HORIZONTAL_LAYER, via.at)));
        }
        let terminal_nodes: Vec<(Terminal, Node)> = terminals
            .iter()
            .map(|&t| (t, (VERTICAL_LAYER, GridPoint::of_terminal(t, top_row))))
            .collect();
        for &(_, n) in &terminal_nodes {
            intern(n, &mut index, &mut order);
        }

        for &node in &order {
            match owner.get(&node) {
                Some(&other) if other != net => {
                    if reported.insert((other, net, node.0)) {
                        violations.push(Violation::ShortCircuit {
                            net_a: other,
                            net_b: net,
                            point: node.1,
                            layer: node.0,
                        });
                    }
                }
                Some(_) => {}
                None => {
                    owner.insert(node, net);
                }
            }
        }

        let mut dsu = DisjointSet::new(order.len());
        for (a, b) in links {
            dsu.union(index[&a], index[&b]);
        }
        let root = dsu.find(index[&terminal_nodes[0].1]);
        let mut terminal_roots = BTreeSet::new();
        for &(t, n) in &terminal_nodes {
            let r = dsu.find(index[&n]);
            terminal_roots.insert(r);
            if r != root {
                violations.push(Violation::Disconnected { net, unreached: t });
            }
        }
        let mut stray_roots = BTreeSet::new();
        for (i, node) in order.iter().enumerate() {
            let r = dsu.find(i);
            if !terminal_roots.contains(&r) && stray_roots.insert(r) {
                violations.push(Violation::Stray { net, at: node.1 });
            }
        }
    }
    Ok(violations)
}
