//! Channel instances: the two terminal rows of a routing channel, the nets
//! they induce, and the macro features the adaptive router keys on.
//!
//! The text format is two labelled rows of integers:
//!
//! ```text
//! # optional comments
//! TOP: 1 0 2 1
//! BOT: 2 0 0 0
//! ```
//!
//! `0` is a vacant position; equal positive ids belong to the same net.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::constraints;

pub type NetId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input: no TOP/BOT rows found")]
    EmptyInput,
    #[error("row length mismatch: TOP has {top} entries, BOT has {bottom}")]
    LengthMismatch { top: usize, bottom: usize },
    #[error("line {line}: bad token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("net {0} has a single terminal")]
    SingletonNet(NetId),
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Top,
    Bottom,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Top => f.write_str("top"),
            Side::Bottom => f.write_str("bottom"),
        }
    }
}

/// A fixed pin on one of the channel edges. Ordered by `(column, side)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Terminal {
    pub column: usize,
    pub side: Side,
}

impl Terminal {
    pub fn new(side: Side, column: usize) -> Self {
        Terminal { column, side }
    }

    pub fn top(column: usize) -> Self {
        Terminal::new(Side::Top, column)
    }

    pub fn bottom(column: usize) -> Self {
        Terminal::new(Side::Bottom, column)
    }
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.side, self.column)
    }
}

/// A validated channel instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChannelSpec {
    columns: usize,
    top: Vec<NetId>,
    bottom: Vec<NetId>,
}

impl ChannelSpec {
    /// Builds a spec from its two rows, checking every instance invariant.
    pub fn new(top: Vec<NetId>, bottom: Vec<NetId>) -> Result<Self, ParseError> {
        if top.len() != bottom.len() {
            return Err(ParseError::LengthMismatch {
                top: top.len(),
                bottom: bottom.len(),
            });
        }
        if top.is_empty() {
            return Err(ParseError::EmptyInput);
        }
        let mut counts: BTreeMap<NetId, usize> = BTreeMap::new();
        for &id in top.iter().chain(bottom.iter()).filter(|&&id| id != 0) {
            *counts.entry(id).or_default() += 1;
        }
        if let Some((&id, _)) = counts.iter().find(|(_, &n)| n == 1) {
            return Err(ParseError::SingletonNet(id));
        }
        Ok(ChannelSpec {
            columns: top.len(),
            top,
            bottom,
        })
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn top(&self) -> &[NetId] {
        &self.top
    }

    pub fn bottom(&self) -> &[NetId] {
        &self.bottom
    }

    /// Net occupying `terminal`, if any.
    pub fn at(&self, terminal: Terminal) -> Option<NetId> {
        let row = match terminal.side {
            Side::Top => &self.top,
            Side::Bottom => &self.bottom,
        };
        row.get(terminal.column).copied().filter(|&id| id != 0)
    }

    /// All occupied terminal positions in `(column, side)` order.
    pub fn terminals(&self) -> impl Iterator<Item = (Terminal, NetId)> + '_ {
        (0..self.columns).flat_map(move |c| {
            [(Terminal::top(c), self.top[c]), (Terminal::bottom(c), self.bottom[c])]
                .into_iter()
                .filter(|(_, id)| *id != 0)
        })
    }

    pub fn terminal_count(&self) -> usize {
        self.terminals().count()
    }

    pub fn net_count(&self) -> usize {
        let mut ids: Vec<NetId> = self.terminals().map(|(_, id)| id).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }

    /// Serializes to the `.netlist` text format, with a trailing newline.
    pub fn to_text(&self) -> String {
        fn row(ids: &[NetId]) -> String {
            ids.iter().map(|id| id.to_string()).collect::<Vec<_>>().join(" ")
        }
        format!("TOP: {}\nBOT: {}\n", row(&self.top), row(&self.bottom))
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// One electrical equivalence class of terminals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Net {
    pub id: NetId,
    /// Sorted by `(column, side)`, no duplicates.
    pub terminals: Vec<Terminal>,
    pub leftmost: usize,
    pub rightmost: usize,
}

impl Net {
    /// Sorts and dedups `terminals`; returns `None` when the list is empty.
    pub fn new(id: NetId, mut terminals: Vec<Terminal>) -> Option<Self> {
        terminals.sort_unstable();
        terminals.dedup();
        let leftmost = terminals.first()?.column;
        let rightmost = terminals.last()?.column;
        Some(Net {
            id,
            terminals,
            leftmost,
            rightmost,
        })
    }

    /// True when every terminal sits in one column, so no trunk is needed.
    pub fn is_vertical(&self) -> bool {
        self.leftmost == self.rightmost
    }
}

pub fn parse_netlist(text: &str) -> Result<ChannelSpec, ParseError> {
    let mut top: Option<Vec<NetId>> = None;
    let mut bottom: Option<Vec<NetId>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let (label, rest) = line.split_once(':').ok_or_else(|| ParseError::Malformed {
            line: line_no,
            reason: format!("expected `TOP:` or `BOT:` row, found {line:?}"),
        })?;
        let slot = match label.trim() {
            "TOP" => &mut top,
            "BOT" => &mut bottom,
            other => {
                return Err(ParseError::Malformed {
                    line: line_no,
                    reason: format!("unknown row label {other:?}"),
                })
            }
        };
        if slot.is_some() {
            return Err(ParseError::Malformed {
                line: line_no,
                reason: format!("duplicate {} row", label.trim()),
            });
        }
        let ids = rest
            .split_whitespace()
            .map(|tok| {
                tok.parse::<NetId>().map_err(|_| ParseError::BadToken {
                    line: line_no,
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        *slot = Some(ids);
    }

    match (top, bottom) {
        (None, None) => Err(ParseError::EmptyInput),
        (Some(t), Some(b)) => ChannelSpec::new(t, b),
        (Some(_), None) => Err(ParseError::Malformed {
            line: 0,
            reason: "missing BOT row".into(),
        }),
        (None, Some(_)) => Err(ParseError::Malformed {
            line: 0,
            reason: "missing TOP row".into(),
        }),
    }
}

/// Nets of `spec` ordered by leftmost column, ties by ascending id.
pub fn nets_of(spec: &ChannelSpec) -> Vec<Net> {
    let mut by_id: BTreeMap<NetId, Vec<Terminal>> = BTreeMap::new();
    for (terminal, id) in spec.terminals() {
        by_id.entry(id).or_default().push(terminal);
    }
    let mut nets: Vec<Net> = by_id
        .into_iter()
        .filter_map(|(id, terminals)| Net::new(id, terminals))
        .collect();
    nets.sort_by_key(|n| (n.leftmost, n.id));
    nets
}

/// Left/right terminal partition about the channel midpoint, plus size and
/// congestion figures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureVector {
    /// Terminals in columns `< columns / 2`.
    pub left_count: usize,
    pub right_count: usize,
    /// `left_count / (left_count + right_count)`, or 0 with no terminals.
    pub balance: f64,
    pub net_count: usize,
    pub density: usize,
}

pub fn extract_features(spec: &ChannelSpec) -> FeatureVector {
    let mid = spec.columns() / 2;
    let (mut left_count, mut right_count) = (0, 0);
    for (terminal, _) in spec.terminals() {
        if terminal.column < mid {
            left_count += 1;
        } else {
            right_count += 1;
        }
    }
    let total = left_count + right_count;
    let balance = if total == 0 {
        0.0
    } else {
        left_count as f64 / total as f64
    };
    FeatureVector {
        left_count,
        right_count,
        balance,
        net_count: spec.net_count(),
        density: constraints::channel_density(spec).0,
    }
}
