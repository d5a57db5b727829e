use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::layout::{GridPoint, RoutedChannel, HORIZONTAL_LAYER};
use crate::netlist::{ChannelSpec, NetId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderStyle {
    /// Pixels per grid unit, at least 4.
    pub cell_size: u32,
    /// Net colours, indexed by net id modulo length. At least 8 entries.
    pub palette: Vec<String>,
    pub margin: u32,
}

impl Default for RenderStyle {
    fn default() -> Self {
        let palette = [
            "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
            "#bcbd22", "#7f7f7f",
        ];
        RenderStyle {
            cell_size: 24,
            palette: palette.iter().map(|s| s.to_string()).collect(),
            margin: 16,
        }
    }
}

impl RenderStyle {
    pub fn color(&self, net: NetId) -> &str {
        &self.palette[net as usize % self.palette.len()]
    }
}

struct Frame {
    cell: u32,
    margin: u32,
    top_row: usize,
}

impl Frame {
    fn x(&self, column: usize) -> u32 {
        self.margin + column as u32 * self.cell
    }
    fn y(&self, row: usize) -> u32 {
        self.margin + (self.top_row - row) as u32 * self.cell
    }
    fn xy(&self, p: GridPoint) -> (u32, u32) {
        (self.x(p.column), self.y(p.row))
    }
}

/// Draws the channel: a light grid, then one group per routed net with its
/// wires, terminals and vias. Terminals of nets missing from `routed` are
/// drawn in a trailing group.
///
/// # Panics
///
/// If `style.cell_size < 4` or the palette has fewer than 8 colours.
pub fn render_svg(spec: &ChannelSpec, routed: &RoutedChannel, style: &RenderStyle) -> String {
    assert!(style.cell_size >= 4, "cell_size must be at least 4");
    assert!(style.palette.len() >= 8, "palette needs at least 8 colours");
    let top_row = routed.config.top_row();
    let f = Frame {
        cell: style.cell_size,
        margin: style.margin,
        top_row,
    };
    let width = 2 * f.margin + spec.columns().saturating_sub(1) as u32 * f.cell;
    let height = 2 * f.margin + top_row as u32 * f.cell;
    let pin = (f.cell / 3).max(2);
    let via_r = (f.cell / 6).max(1);
    let wire = (f.cell / 8).max(1);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );

    out.push_str("  <g class=\"grid\" stroke=\"#dddddd\" stroke-width=\"1\">\n");
    for c in 0..spec.columns() {
        let _ = writeln!(
            out,
            "    <line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\"/>",
            f.y(top_row),
            f.y(0),
            x = f.x(c)
        );
    }
    for r in 0..=top_row {
        let _ = writeln!(
            out,
            "    <line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\"/>",
            f.x(0),
            f.x(spec.columns().saturating_sub(1)),
            y = f.y(r)
        );
    }
    out.push_str("  </g>\n");

    let pin_rect = |out: &mut String, p: GridPoint, fill: &str| {
        let (x, y) = f.xy(p);
        let _ = writeln!(
            out,
            "    <rect x=\"{}\" y=\"{}\" width=\"{pin}\" height=\"{pin}\" fill=\"{fill}\"/>",
            x as i64 - (pin / 2) as i64,
            y as i64 - (pin / 2) as i64
        );
    };

    let mut drawn: BTreeSet<NetId> = BTreeSet::new();
    for (&net, segments) in &routed.tracks {
        drawn.insert(net);
        let color = style.color(net);
        let _ = writeln!(
            out,
            "  <g class=\"net\" id=\"net{net}\" stroke=\"{color}\" fill=\"none\" stroke-width=\"{wire}\">"
        );
        for s in segments {
            let (x0, y0) = f.xy(s.p0);
            let (x1, y1) = f.xy(s.p1);
            let dash = if s.layer == HORIZONTAL_LAYER {
                ""
            } else {
                " stroke-dasharray=\"4 2\""
            };
            let _ = writeln!(
                out,
                "    <polyline data-layer=\"{}\" points=\"{x0},{y0} {x1},{y1}\"{dash}/>",
                s.layer
            );
        }
        for (t, _) in spec.terminals().filter(|&(_, id)| id == net) {
            pin_rect(&mut out, GridPoint::of_terminal(t, top_row), color);
        }
        for v in routed.vias.get(&net).into_iter().flatten() {
            let (x, y) = f.xy(v.at);
            let _ = writeln!(out, "    <circle cx=\"{x}\" cy=\"{y}\" r=\"{via_r}\" fill=\"{color}\"/>");
        }
        out.push_str("  </g>\n");
    }

    let loose: Vec<_> = spec.terminals().filter(|(_, id)| !drawn.contains(id)).collect();
    if !loose.is_empty() {
        out.push_str("  <g class=\"unrouted\" stroke=\"none\">\n");
        for (t, id) in loose {
            pin_rect(&mut out, GridPoint::of_terminal(t, top_row), style.color(id));
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}
