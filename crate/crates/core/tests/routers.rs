mod common;

use chanroute::constraints::channel_density;
use chanroute::instances::InstanceFamily;
use chanroute::layout::{metrics, validate, Violation};
use chanroute::netlist::ChannelSpec;
use chanroute::router::{
    route_adaptive, route_dogleg, route_left_edge, RouteError, RouterConfig, RowSelectionPolicy, StrategyBank,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check_clean(spec: &ChannelSpec, res: &Result<chanroute::layout::RoutedChannel, RouteError>) {
    match res {
        Ok(r) => {
            assert!(r.is_well_formed());
            assert_eq!(validate(spec, r).unwrap(), vec![], "\n{spec}");
            // single-column nets count toward density but never take a track
            assert!(metrics(r).tracks_used >= common::trunk_density(spec), "\n{spec}");
            if common::trunk_density(spec) == channel_density(spec).0 {
                assert!(metrics(r).tracks_used >= channel_density(spec).0);
            }
            assert!(r.rows_used.iter().all(|row| r.config.track_rows().contains(row)));
        }
        Err(e) => {
            // unplaced nets are absent, so only placed ones must be clean
            if let Some(p) = e.partial() {
                let bad: Vec<_> = validate(spec, p)
                    .unwrap()
                    .into_iter()
                    .filter(|v| !matches!(v, Violation::Disconnected { net, .. } if !p.tracks.contains_key(net)))
                    .collect();
                assert_eq!(bad, vec![], "partial routing\n{spec}");
            }
        }
    }
}

#[test]
fn every_router_on_a_thousand_instances() {
    let banks: Vec<StrategyBank> = RowSelectionPolicy::ALL.iter().map(|&p| StrategyBank::uniform(p, 5)).collect();
    for i in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(i);
        let fam = InstanceFamily::standard().acyclic(i % 3 == 0);
        let spec = fam.generate(&mut rng);
        let cfg = fam.config_for(&spec);
        check_clean(&spec, &route_left_edge(&spec, &cfg));
        check_clean(&spec, &route_dogleg(&spec, &cfg));
        check_clean(&spec, &route_adaptive(&spec, &cfg, &banks[i as usize % banks.len()]));
    }
}

#[test]
fn left_edge_succeeds_on_acyclic_with_slack() {
    // with one row per net, an acyclic instance always fits
    for i in 0..300u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + i);
        let spec = InstanceFamily::bench().acyclic(true).generate(&mut rng);
        let cfg = RouterConfig::new(spec.net_count());
        let r = route_left_edge(&spec, &cfg).unwrap();
        assert!(validate(&spec, &r).unwrap().is_empty());
    }
}

#[test]
fn left_edge_with_dogleg_enabled_falls_back() {
    let spec = chanroute::netlist::parse_netlist("TOP: 1 0 1 0 2\nBOT: 2 0 0 0 1").unwrap();
    let cfg = RouterConfig::new(4);
    assert!(matches!(route_left_edge(&spec, &cfg), Err(RouteError::CyclicVcg { .. })));
    let r = route_left_edge(&spec, &cfg.with_dogleg(true)).unwrap();
    let d = route_dogleg(&spec, &cfg).unwrap();
    assert_eq!((r.tracks, r.vias), (d.tracks, d.vias));
}

#[test]
fn left_edge_meets_density_without_vertical_constraints() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..300 {
        let spec = common::vcg_free_instance(&mut rng, 12);
        let r = route_left_edge(&spec, &RouterConfig::new(12)).unwrap();
        assert_eq!(metrics(&r).tracks_used, common::density(&spec).0, "\n{spec}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn routers_never_emit_violations(seed in any::<u64>(), rows in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = common::wild_instance(&mut rng);
        let cfg = RouterConfig::new(rows);
        check_clean(&spec, &route_left_edge(&spec, &cfg));
        check_clean(&spec, &route_dogleg(&spec, &cfg));
        check_clean(&spec, &route_adaptive(&spec, &cfg, &StrategyBank::default()));
    }

    #[test]
    fn routing_is_deterministic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = InstanceFamily::bench().generate(&mut rng);
        let cfg = InstanceFamily::bench().config_for(&spec);
        prop_assert_eq!(route_dogleg(&spec, &cfg), route_dogleg(&spec, &cfg));
        let bank = StrategyBank::default();
        prop_assert_eq!(route_adaptive(&spec, &cfg, &bank), route_adaptive(&spec, &cfg, &bank));
    }

    #[test]
    fn more_rows_never_hurt_left_edge(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = InstanceFamily::bench().acyclic(true).generate(&mut rng);
        let d = channel_density(&spec).0;
        if let Ok(r) = route_left_edge(&spec, &RouterConfig::new(d + 1)) {
            let wider = route_left_edge(&spec, &RouterConfig::new(d + 4)).unwrap();
            prop_assert_eq!(metrics(&r).tracks_used, metrics(&wider).tracks_used);
        }
    }
}
