use graphcover::analysis::{chromatic_index, has_perfect_matching, has_semi_perfect_matching};
use graphcover::canon::{canonical_form, isomorphic};
use graphcover::covers::{compose, find_cover, fold_count, verify_cover, ProjectionKind};
use graphcover::factory::{simple_pfold_cover, FoldSpec};
use graphcover::format::{parse_certificate, parse_mg, to_mg, write_certificate};
use graphcover::products::{odot, times_k2};
use graphcover::{EdgeKind, Multigraph};
use proptest::prelude::*;

fn edge(n: usize) -> impl Strategy<Value = EdgeKind> {
    (0..n, 0..n, 0..3u8).prop_map(|(u, v, k)| match k {
        0 => EdgeKind::looped(u),
        1 => EdgeKind::semi(u),
        _ if u == v => EdgeKind::semi(u),
        _ => EdgeKind::normal(u, v),
    })
}

fn multigraph() -> impl Strategy<Value = Multigraph> {
    (1..=6usize)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(edge(n), 0..=10)))
        .prop_map(|(n, edges)| Multigraph::new(n, edges).unwrap())
}

fn connected() -> impl Strategy<Value = Multigraph> {
    multigraph().prop_filter("connected", |g| g.is_connected())
}

/// Relabels vertices and reverses the edge order.
fn shuffle(g: &Multigraph, shift: usize) -> Multigraph {
    let n = g.vertex_count();
    let f = |v: usize| (v + shift) % n;
    let edges = g
        .edge_kinds()
        .iter()
        .rev()
        .map(|e| {
            let (u, v) = e.ends();
            if e.is_semi() {
                EdgeKind::semi(f(u))
            } else if e.is_loop() {
                EdgeKind::looped(f(u))
            } else {
                EdgeKind::normal(f(v), f(u))
            }
        })
        .collect();
    Multigraph::new(n, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mg_round_trip(g in multigraph()) {
        prop_assert_eq!(parse_mg(&to_mg(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels(g in multigraph(), shift in 0..6usize) {
        let h = shuffle(&g, shift);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(isomorphic(&g, &h));
    }

    #[test]
    fn relabelled_copy_is_a_one_fold_cover(g in connected(), shift in 0..6usize) {
        let h = shuffle(&g, shift);
        let p = find_cover(&h, &g, ProjectionKind::Cover).unwrap();
        prop_assert!(p.is_some_and(|p| verify_cover(&p).is_ok() && fold_count(&p) == Ok(1)));
    }

    #[test]
    fn products_are_two_fold_covers(g in multigraph()) {
        let (x, px) = times_k2(&g);
        let (o, po) = odot(&g);
        prop_assert!(verify_cover(&px).is_ok() && verify_cover(&po).is_ok());
        prop_assert_eq!(x.vertex_count(), 2 * g.vertex_count());
        prop_assert!(x.is_bipartite() && !x.has_loops() && !x.has_semi_edges());
        prop_assert!(!o.has_semi_edges());
        prop_assert_eq!(chromatic_index(&o).value(), chromatic_index(&g).value());
        prop_assert_eq!(has_semi_perfect_matching(&g).is_some(), has_perfect_matching(&o).is_some());
    }

    #[test]
    fn certificates_round_trip(g in connected()) {
        let (o, p) = odot(&g);
        let q = parse_certificate(&write_certificate(&p), &o, &g).unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn pfold_covers_are_simple(g in connected(), extra in 0..3usize) {
        let spec = FoldSpec::of(&g);
        let p = (spec.min_fold..).filter(|&p| spec.admits(p)).nth(extra).unwrap();
        let (h, proj) = simple_pfold_cover(&g, p).unwrap();
        prop_assert!(h.is_simple());
        prop_assert!(verify_cover(&proj).is_ok());
        prop_assert_eq!(fold_count(&proj), Ok(p));
        prop_assert!(find_cover(&h, &g, ProjectionKind::Cover).unwrap().is_some());
    }

    #[test]
    fn composition_multiplies_folds(g in connected()) {
        let (o, p) = odot(&g);
        let (oo, q) = times_k2(&o);
        let r = compose(&q, &p).unwrap();
        prop_assert!(verify_cover(&r).is_ok());
        prop_assert_eq!(r.source(), &oo);
        prop_assert_eq!(fold_count(&r), Ok(4));
    }
}
