//! Track assignment. Three routers share one geometry model:
//!
//! * [`route_left_edge`] packs whole-net trunks top-down, honouring the VCG;
//! * [`route_dogleg`] does the same after splitting multi-terminal nets into
//!   chained two-terminal subnets;
//! * [`route_adaptive`] walks subnets in leftmost-terminal order, choosing
//!   each next trunk row with a policy looked up in a [`StrategyBank`].

mod adaptive;
mod assemble;
mod bank;
mod config;
mod left_edge;
mod policy;
mod trainer;

use std::fmt;

use thiserror::Error;

pub use adaptive::{route_adaptive, select_row, TrackState};
pub use bank::{BankCell, BankParseError, CellIndex, StrategyBank, DEFAULT_BUCKETS, DENSITY_BANDS};
pub use config::RouterConfig;
pub use left_edge::{route_dogleg, route_left_edge};
pub use policy::RowSelectionPolicy;
pub use trainer::{train, train_bank, CellReport, InstanceSource, PolicyScore, Training, TrainingOptions};

use crate::constraints::Span;
use crate::layout::RoutedChannel;
use crate::netlist::{Net, NetId, Terminal};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RouteError {
    #[error("CyclicVcg({cycle:?}): vertical constraints form a cycle")]
    CyclicVcg { cycle: Vec<NetId> },
    #[error("RowsExhausted: {unplaced} trunk(s) could not be placed within {max_rows} rows")]
    RowsExhausted {
        max_rows: usize,
        unplaced: usize,
        /// Nets fully routed before the failure.
        partial: Box<RoutedChannel>,
    },
}

impl RouteError {
    pub fn kind(&self) -> &'static str {
        match self {
            RouteError::CyclicVcg { .. } => "CyclicVcg",
            RouteError::RowsExhausted { .. } => "RowsExhausted",
        }
    }

    pub fn partial(&self) -> Option<&RoutedChannel> {
        match self {
            RouteError::RowsExhausted { partial, .. } => Some(partial),
            RouteError::CyclicVcg { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubnetKey {
    pub parent: NetId,
    pub index: usize,
}

impl fmt::Display for SubnetKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.parent, self.index)
    }
}

/// Two-terminal piece of a net.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subnet {
    pub key: SubnetKey,
    pub terminals: Vec<Terminal>,
    pub leftmost: usize,
    pub rightmost: usize,
}

impl Span for Subnet {
    type Key = SubnetKey;

    fn key(&self) -> SubnetKey {
        self.key
    }
    fn parent(&self) -> NetId {
        self.key.parent
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

/// Splits every net with k ≥ 3 terminals into k−1 subnets joining
/// consecutive terminals in `(column, side)` order. Two-terminal nets come
/// through as a single subnet with index 0.
pub fn decompose_multiterminal(nets: &[Net]) -> Vec<Subnet> {
    nets.iter()
        .flat_map(|net| {
            net.terminals.windows(2).enumerate().map(move |(index, pair)| Subnet {
                key: SubnetKey {
                    parent: net.id,
                    index,
                },
                terminals: pair.to_vec(),
                leftmost: pair[0].column,
                rightmost: pair[1].column,
            })
        })
        .collect()
}
