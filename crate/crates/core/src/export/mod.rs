//! Text outputs: Graphviz dot for netlists and constraint graphs, SVG
//! drawings of routed channels and JSON run reports.

mod dot;
mod report;
mod svg;

pub use dot::{netlist_to_dot, vcg_to_dot};
pub use report::{report, RunInfo};
pub use svg::{render_svg, RenderStyle};
