use std::fmt::Write as _;

use crate::constraints::Vcg;
use crate::netlist::{nets_of, ChannelSpec, Side, Terminal};

fn node_name(t: Terminal) -> String {
    match t.side {
        Side::Top => format!("UP{}", t.column),
        Side::Bottom => format!("DOWN{}", t.column),
    }
}

/// Undirected terminal graph. Each net is drawn as a chain through its
/// terminals in `(column, side)` order.
pub fn netlist_to_dot(spec: &ChannelSpec) -> String {
    let mut out = String::from("graph netlist {\n");
    for (t, id) in spec.terminals() {
        let _ = writeln!(out, "  {} [label=\"{}\\n{}\"];", node_name(t), node_name(t), id);
    }
    let mut edges: Vec<(Terminal, Terminal)> = nets_of(spec)
        .iter()
        .flat_map(|n| n.terminals.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>())
        .collect();
    edges.sort_unstable();
    for (a, b) in edges {
        let _ = writeln!(out, "  {} -- {};", node_name(a), node_name(b));
    }
    out.push_str("}\n");
    out
}

pub fn vcg_to_dot(vcg: &Vcg) -> String {
    let mut out = String::from("digraph vcg {\n");
    for n in vcg.nodes() {
        let _ = writeln!(out, "  {n};");
    }
    for (a, b) in vcg.edges() {
        let _ = writeln!(out, "  {a} -> {b};");
    }
    out.push_str("}\n");
    out
}
