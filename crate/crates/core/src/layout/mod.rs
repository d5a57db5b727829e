//! Geometry of a routed channel.
//!
//! Rows run bottom to top: row 0 is the bottom terminal edge, rows
//! `1..=max_rows` are tracks and `max_rows + 1` is the top terminal edge.
//! Layer 0 carries vertical wires, layer 1 horizontal ones.

mod metrics;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

pub use metrics::{metrics, Metrics};
pub use validate::{validate, ValidateError, Violation};

use crate::netlist::{NetId, Side, Terminal};
use crate::router::RouterConfig;

pub const VERTICAL_LAYER: u8 = 0;
pub const HORIZONTAL_LAYER: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GridPoint {
    pub column: usize,
    pub row: usize,
}

impl GridPoint {
    pub fn new(column: usize, row: usize) -> Self {
        GridPoint { column, row }
    }

    /// Grid point of a terminal given the channel's top edge row.
    pub fn of_terminal(t: Terminal, top_row: usize) -> Self {
        match t.side {
            Side::Top => GridPoint::new(t.column, top_row),
            Side::Bottom => GridPoint::new(t.column, 0),
        }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.column, self.row)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Segment {
    pub layer: u8,
    pub p0: GridPoint,
    pub p1: GridPoint,
}

impl Segment {
    pub fn vertical(column: usize, from_row: usize, to_row: usize) -> Self {
        Segment {
            layer: VERTICAL_LAYER,
            p0: GridPoint::new(column, from_row),
            p1: GridPoint::new(column, to_row),
        }
    }

    pub fn horizontal(row: usize, from_column: usize, to_column: usize) -> Self {
        Segment {
            layer: HORIZONTAL_LAYER,
            p0: GridPoint::new(from_column, row),
            p1: GridPoint::new(to_column, row),
        }
    }

    pub fn is_axis_aligned(&self) -> bool {
        self.p0.column == self.p1.column || self.p0.row == self.p1.row
    }

    pub fn is_horizontal(&self) -> bool {
        self.p0.row == self.p1.row && self.p0.column != self.p1.column
    }

    pub fn is_vertical(&self) -> bool {
        self.p0.column == self.p1.column && self.p0.row != self.p1.row
    }

    /// Manhattan length in grid units.
    pub fn length(&self) -> usize {
        self.p0.column.abs_diff(self.p1.column) + self.p0.row.abs_diff(self.p1.row)
    }

    pub fn has_endpoint(&self, p: GridPoint) -> bool {
        self.p0 == p || self.p1 == p
    }

    /// Shared endpoint with `other`, if any.
    pub fn joint(&self, other: &Segment) -> Option<GridPoint> {
        [self.p0, self.p1].into_iter().find(|&p| other.has_endpoint(p))
    }

    /// Every grid point on an axis-aligned segment, from `p0` to `p1`.
    /// Empty for diagonal segments.
    pub fn points(&self) -> Vec<GridPoint> {
        let (a, b) = (self.p0, self.p1);
        if a.column == b.column {
            steps(a.row, b.row).map(|r| GridPoint::new(a.column, r)).collect()
        } else if a.row == b.row {
            steps(a.column, b.column).map(|c| GridPoint::new(c, a.row)).collect()
        } else {
            Vec::new()
        }
    }
}

fn steps(from: usize, to: usize) -> Box<dyn Iterator<Item = usize>> {
    if from <= to {
        Box::new(from..=to)
    } else {
        Box::new((to..=from).rev())
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{} {}-{}", self.layer, self.p0, self.p1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Via {
    pub at: GridPoint,
}

/// Per-net ordered segment lists ("tracklist"), their vias and the track
/// rows carrying trunks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutedChannel {
    pub tracks: BTreeMap<NetId, Vec<Segment>>,
    pub vias: BTreeMap<NetId, Vec<Via>>,
    pub rows_used: BTreeSet<usize>,
    pub config: RouterConfig,
}

impl RoutedChannel {
    pub fn new(config: RouterConfig) -> Self {
        RoutedChannel {
            tracks: BTreeMap::new(),
            vias: BTreeMap::new(),
            rows_used: BTreeSet::new(),
            config,
        }
    }

    /// Records a net's path. Vias go wherever two consecutive segments
    /// change layer; horizontal segments mark their row as used.
    pub fn insert_net(&mut self, net: NetId, segments: Vec<Segment>) {
        let mut vias: Vec<Via> = Vec::new();
        for pair in segments.windows(2) {
            if pair[0].layer != pair[1].layer {
                if let Some(at) = pair[0].joint(&pair[1]) {
                    if !vias.iter().any(|v| v.at == at) {
                        vias.push(Via { at });
                    }
                }
            }
        }
        for s in segments.iter().filter(|s| s.layer == HORIZONTAL_LAYER) {
            self.rows_used.insert(s.p0.row);
        }
        self.tracks.insert(net, segments);
        self.vias.insert(net, vias);
    }

    pub fn remove_net(&mut self, net: NetId) {
        self.tracks.remove(&net);
        self.vias.remove(&net);
        self.rows_used = self
            .tracks
            .values()
            .flatten()
            .filter(|s| s.layer == HORIZONTAL_LAYER)
            .map(|s| s.p0.row)
            .collect();
    }

    pub fn net_ids(&self) -> impl Iterator<Item = NetId> + '_ {
        self.tracks.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.tracks.is_empty()
    }

    /// Checks the container's own invariants: consecutive segments share an
    /// endpoint and every via sits on a layer change between neighbours.
    pub fn is_well_formed(&self) -> bool {
        self.tracks.iter().all(|(net, segs)| {
            let chained = segs.windows(2).all(|w| w[0].joint(&w[1]).is_some());
            let vias_ok = self.vias.get(net).into_iter().flatten().all(|v| {
                segs.windows(2)
                    .any(|w| w[0].layer != w[1].layer && w[0].has_endpoint(v.at) && w[1].has_endpoint(v.at))
            });
            chained && vias_ok
        })
    }
}
