//! Two-layer channel routing.
//!
//! A channel is a strip of grid columns with fixed terminals on its top and
//! bottom edges. Routers assign each net a horizontal trunk on one of the
//! track rows and connect terminals to it with vertical branches, keeping
//! horizontals on layer 1 and verticals on layer 0.
//!
//! ```
//! use chanroute::netlist::parse_netlist;
//! use chanroute::router::{route_left_edge, RouterConfig};
//! use chanroute::layout::{validate, metrics};
//!
//! let spec = parse_netlist("TOP: 1 2 0 2\nBOT: 0 1 0 0\n").unwrap();
//! let routed = route_left_edge(&spec, &RouterConfig::new(4)).unwrap();
//! assert!(validate(&spec, &routed).unwrap().is_empty());
//! assert_eq!(metrics(&routed).tracks_used, 2);
//! ```

pub mod bench;
pub mod cli;
pub mod constraints;
pub mod export;
pub mod instances;
pub mod layout;
pub mod netlist;
pub mod router;
