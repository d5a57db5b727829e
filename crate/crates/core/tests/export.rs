mod common;

use std::collections::BTreeSet;

use chanroute::constraints::build_vcg;
use chanroute::export::{netlist_to_dot, render_svg, vcg_to_dot, RenderStyle};
use chanroute::instances::InstanceFamily;
use chanroute::layout::{RoutedChannel, Segment};
use chanroute::netlist::{nets_of, parse_netlist};
use chanroute::router::{route_dogleg, route_left_edge, RouterConfig};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Recognizes the dot subset the exporter uses: a `graph`/`digraph` block
/// of node statements (optionally with `[k=v, ...]`) and single edge
/// statements, each ending in `;`. Returns node and edge counts.
fn check_dot(text: &str) -> Result<(usize, usize), String> {
    #[derive(Debug, PartialEq)]
    enum Tok {
        Id(String),
        Op(String),
        Sym(char),
    }
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                s.push(c);
                chars.next();
            }
            toks.push(Tok::Id(s));
        } else if c == '"' {
            chars.next();
            let mut s = String::new();
            loop {
                match chars.next() {
                    Some('\\') => {
                        s.push(chars.next().ok_or("dangling escape")?);
                    }
                    Some('"') => break,
                    Some(c) => s.push(c),
                    None => return Err("unterminated string".into()),
                }
            }
            toks.push(Tok::Id(s));
        } else if c == '-' {
            chars.next();
            match chars.next() {
                Some(o @ ('-' | '>')) => toks.push(Tok::Op(format!("-{o}"))),
                other => return Err(format!("bad operator -{other:?}")),
            }
        } else if "{}[]=;,".contains(c) {
            toks.push(Tok::Sym(c));
            chars.next();
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }

    let mut it = toks.into_iter().peekable();
    let op = match it.next() {
        Some(Tok::Id(k)) if k == "graph" => "--",
        Some(Tok::Id(k)) if k == "digraph" => "->",
        t => return Err(format!("expected graph keyword, got {t:?}")),
    };
    if !matches!(it.next(), Some(Tok::Id(_))) {
        return Err("missing graph name".into());
    }
    if it.next() != Some(Tok::Sym('{')) {
        return Err("missing {".into());
    }
    let (mut nodes, mut edges) = (0, 0);
    loop {
        match it.next() {
            Some(Tok::Sym('}')) => break,
            Some(Tok::Id(_)) => {}
            t => return Err(format!("expected statement, got {t:?}")),
        }
        match it.next() {
            Some(Tok::Op(o)) => {
                if o != op {
                    return Err(format!("edge operator {o} in wrong graph kind"));
                }
                if !matches!(it.next(), Some(Tok::Id(_))) {
                    return Err("edge without target".into());
                }
                edges += 1;
                if it.next() != Some(Tok::Sym(';')) {
                    return Err("edge not terminated".into());
                }
            }
            Some(Tok::Sym('[')) => {
                loop {
                    match (it.next(), it.next(), it.next()) {
                        (Some(Tok::Id(_)), Some(Tok::Sym('=')), Some(Tok::Id(_))) => {}
                        t => return Err(format!("bad attribute {t:?}")),
                    }
                    match it.next() {
                        Some(Tok::Sym(',')) => continue,
                        Some(Tok::Sym(']')) => break,
                        t => return Err(format!("bad attribute list {t:?}")),
                    }
                }
                nodes += 1;
                if it.next() != Some(Tok::Sym(';')) {
                    return Err("node not terminated".into());
                }
            }
            Some(Tok::Sym(';')) => nodes += 1,
            t => return Err(format!("unexpected {t:?}")),
        }
    }
    if it.next().is_some() {
        return Err("trailing tokens".into());
    }
    Ok((nodes, edges))
}

#[test]
fn dot_checker_rejects_garbage() {
    assert!(check_dot("graph g {\n  a -- b\n}").is_err());
    assert!(check_dot("graph g {\n  a -> b;\n}").is_err());
    assert!(check_dot("digraph g {\n  a;\n").is_err());
    assert_eq!(check_dot("digraph g {\n  a [label=\"x\\ny\"];\n  a -> b;\n}"), Ok((1, 1)));
}

#[test]
fn svg_groups_and_colors() {
    let spec = parse_netlist("TOP: 1 2 0 3 2 0\nBOT: 0 1 3 0 0 3").unwrap();
    let routed = route_left_edge(&spec, &RouterConfig::new(4)).unwrap();
    let svg = render_svg(&spec, &routed, &RenderStyle::default());
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let nets: Vec<_> = doc
        .descendants()
        .filter(|n| n.has_tag_name("g") && n.attribute("class") == Some("net"))
        .collect();
    assert_eq!(nets.len(), 3);
    let colors: BTreeSet<_> = nets.iter().map(|g| g.attribute("stroke").unwrap()).collect();
    assert_eq!(colors.len(), 3);
    for g in &nets {
        assert!(g.children().any(|c| c.has_tag_name("polyline")));
    }
}

#[test]
fn svg_is_injective_on_geometry() {
    let spec = parse_netlist("TOP: 1 0 1\nBOT: 0 0 0").unwrap();
    let cfg = RouterConfig::new(3);
    let style = RenderStyle::default();
    let mut seen = BTreeSet::new();
    for row in 1..=3 {
        let mut rc = RoutedChannel::new(cfg);
        rc.insert_net(
            1,
            vec![Segment::vertical(0, 4, row), Segment::horizontal(row, 0, 2), Segment::vertical(2, row, 4)],
        );
        assert!(seen.insert(render_svg(&spec, &rc, &style)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn outputs_are_well_formed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = InstanceFamily::bench().generate(&mut rng);
        let nets = nets_of(&spec);

        let (nodes, edges) = check_dot(&netlist_to_dot(&spec)).unwrap();
        prop_assert_eq!(nodes, spec.terminal_count());
        prop_assert_eq!(edges, spec.terminal_count() - nets.len());

        let vcg_dot = vcg_to_dot(&build_vcg(&nets));
        let (_, vedges) = check_dot(&vcg_dot).unwrap();
        prop_assert_eq!(vedges, common::vcg_edges(&spec).len());
        let pairs: Vec<(u32, u32)> = vcg_dot
            .lines()
            .filter_map(|l| l.trim().strip_suffix(';')?.split_once(" -> "))
            .map(|(a, b)| (a.parse().unwrap(), b.parse().unwrap()))
            .collect();
        prop_assert!(pairs.windows(2).all(|w| w[0] < w[1]));

        let cfg = InstanceFamily::bench().config_for(&spec);
        let routed = route_dogleg(&spec, &cfg)
            .unwrap_or_else(|e| e.partial().cloned().unwrap_or_else(|| RoutedChannel::new(cfg)));
        let svg = render_svg(&spec, &routed, &RenderStyle::default());
        let doc = roxmltree::Document::parse(&svg).unwrap();
        prop_assert!(doc.root_element().has_tag_name("svg"));
        let groups = doc
            .descendants()
            .filter(|n| n.has_tag_name("g") && n.attribute("class") == Some("net"))
            .count();
        prop_assert_eq!(groups, routed.tracks.len());
        prop_assert_eq!(svg.clone(), render_svg(&spec, &routed, &RenderStyle::default()));
    }
}
