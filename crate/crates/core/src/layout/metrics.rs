use std::collections::BTreeSet;

use serde::Serialize;

use super::RoutedChannel;

/// Cost figures, compared lexicographically in this field order: layers,
/// then tracks, then wire length.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Metrics {
    pub layers_used: usize,
    pub tracks_used: usize,
    pub total_length: usize,
    pub via_count: usize,
}

pub fn metrics(routed: &RoutedChannel) -> Metrics {
    let segments = routed.tracks.values().flatten();
    let layers: BTreeSet<u8> = segments.clone().map(|s| s.layer).collect();
    Metrics {
        layers_used: layers.len(),
        tracks_used: routed.rows_used.len(),
        total_length: segments.map(|s| s.length()).sum(),
        via_count: routed.vias.values().map(Vec::len).sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::Segment;
    use crate::router::RouterConfig;

    #[test]
    fn empty_routing_is_zero() {
        assert_eq!(metrics(&RoutedChannel::new(RouterConfig::new(1))), Metrics::default());
    }

    #[test]
    fn single_vertical() {
        let mut rc = RoutedChannel::new(RouterConfig::new(4));
        rc.insert_net(1, vec![Segment::vertical(2, 0, 5)]);
        let m = metrics(&rc);
        assert_eq!((m.total_length, m.layers_used, m.via_count, m.tracks_used), (5, 1, 0, 0));
    }

    #[test]
    fn drop_trunk_rise() {
        let mut rc = RoutedChannel::new(RouterConfig::new(4));
        rc.insert_net(
            1,
            vec![
                Segment::vertical(1, 5, 2),
                Segment::horizontal(2, 1, 6),
                Segment::vertical(6, 2, 0),
            ],
        );
        let m = metrics(&rc);
        assert_eq!(m.total_length, 3 + 5 + 2);
        assert_eq!((m.layers_used, m.tracks_used, m.via_count), (2, 1, 2));
    }
}
