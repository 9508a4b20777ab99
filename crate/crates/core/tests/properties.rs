use proptest::prelude::*;
use proptest::sample::subsequence;

use hyperturan::constructions::{self, Tag};
use hyperturan::patterns::{self, PatternTag};
use hyperturan::ramsey::{self, edges_embed, star_peeling};
use hyperturan::turan::{self, SearchSpec};
use hyperturan::{are_isomorphic, canonical_form, canonical_key, Edge, Hypergraph3, Registry};

/// A graph on `lo..=hi` vertices with each triple present independently.
fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Hypergraph3> {
    (lo..=hi, 0.0f64..0.7).prop_flat_map(|(n, p)| {
        let slots = hyperturan::graph::slot_count(n);
        proptest::collection::vec(proptest::bool::weighted(p.max(0.01)), slots).prop_map(move |bits| {
            let edges = bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| Edge::from_rank(i));
            Hypergraph3::from_edges(n, edges).unwrap()
        })
    })
}

fn with_perm(g: Hypergraph3) -> impl Strategy<Value = (Hypergraph3, Vec<usize>)> {
    let n = g.n();
    (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

/// A relabeled sub-3-graph of a named construction.
fn inside(tag: Tag, lo: usize, hi: usize) -> impl Strategy<Value = Hypergraph3> {
    (lo..=hi)
        .prop_flat_map(move |n| {
            let host = constructions::build(tag, n).unwrap();
            let edges: Vec<Edge> = host.edges().collect();
            let k = edges.len();
            (subsequence(edges, 0..=k), Just((0..n).collect::<Vec<_>>()).prop_shuffle(), Just(n))
        })
        .prop_map(|(es, perm, n)| Hypergraph3::from_edges(n, es).unwrap().relabel(&perm).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn key_ignores_labels((g, perm) in graph(1, 16).prop_flat_map(with_perm)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_key(&g), canonical_key(&h));
        prop_assert!(are_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn canonical_form_is_a_fixed_point(g in graph(1, 12)) {
        let f = canonical_form(&g);
        prop_assert_eq!(f.edge_count(), g.edge_count());
        prop_assert_eq!(canonical_form(&f), f.clone());
        prop_assert!(are_isomorphic(&g, &f).unwrap());
    }

    #[test]
    fn text_round_trip(g in graph(1, 16)) {
        prop_assert_eq!(Hypergraph3::parse_text(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn oracles_match_embedder(g in graph(3, 8)) {
        for t in PatternTag::ALL {
            let fast = patterns::find_tag_masks(t, &g.masks());
            let slow = patterns::find_embedding(&t.graph(), &g);
            prop_assert_eq!(fast.is_some(), slow.is_some(), "{}", t);
            if let Some(w) = patterns::find(&g, &t.pattern()) {
                prop_assert!(patterns::check_witness(&g, &t.pattern(), &w));
            }
        }
    }

    #[test]
    fn containment_is_monotone(g in graph(3, 9), pick in any::<prop::sample::Index>()) {
        prop_assume!(!g.is_empty());
        let edges: Vec<Edge> = g.edges().collect();
        let e = edges[pick.index(edges.len())];
        let mut smaller = g.clone();
        smaller.remove(e).unwrap();
        for t in PatternTag::ALL {
            if patterns::contains_tag(&smaller, t) {
                prop_assert!(patterns::contains_tag(&g, t));
            }
        }
    }

    #[test]
    fn star_test_matches_embedding(g in prop_oneof![inside(Tag::Star, 3, 8), graph(3, 8)]) {
        let star = constructions::build(Tag::Star, g.n()).unwrap();
        prop_assert_eq!(patterns::in_star(&g), patterns::is_sub_iso_generic(&g, &star));
    }

    #[test]
    fn comet_test_matches_embedding(g in prop_oneof![inside(Tag::Comet, 4, 8), graph(4, 8)]) {
        let comet = constructions::build(Tag::Comet, g.n()).unwrap();
        prop_assert_eq!(patterns::in_comet(&g), patterns::is_sub_iso_generic(&g, &comet));
    }

    #[test]
    fn fast_sub_iso_matches_generic(h in graph(3, 7), tag in prop::sample::select(vec![
        Tag::Star, Tag::Comet, Tag::Rocket, Tag::G1, Tag::G2, Tag::G3, Tag::K5Plus2, Tag::K6UnionK,
    ])) {
        let host = constructions::build(tag, 7).unwrap();
        let h = h.pad_to(7).unwrap();
        prop_assert_eq!(patterns::is_sub_iso(&h, &host), patterns::is_sub_iso_generic(&h, &host));
    }

    #[test]
    fn edges_embed_matches_generic(a in graph(4, 7), b in graph(4, 7)) {
        prop_assume!(a.edge_count() <= 4 && b.edge_count() <= 6);
        let n = a.n().max(b.n());
        let (a, b) = (a.pad_to(n).unwrap(), b.pad_to(n).unwrap());
        prop_assert_eq!(edges_embed(&a, &b), patterns::is_sub_iso_generic(&a, &b));
    }

    #[test]
    fn star_peeling_is_proper(r in 1usize..=10, extra in 0usize..=4) {
        let n = (r + 5).saturating_sub(extra).max(3);
        let w = star_peeling(&Hypergraph3::complete(n).unwrap(), r).unwrap();
        prop_assert!(w.verify().is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// The search agrees with plain enumeration on tiny instances.
    #[test]
    fn search_matches_reference(n in 4usize..=6, t in prop::sample::select(PatternTag::ALL.to_vec())) {
        let spec = SearchSpec::new(n, &[t]);
        let fast = turan::max_f_free(&spec).unwrap();
        let (value, mut family) = turan::reference_search(&spec).unwrap();
        let mut got = fast.family.clone();
        got.sort_by_key(|k| k.to_string());
        family.sort_by_key(|k| k.to_string());
        prop_assert_eq!(fast.value, value);
        prop_assert_eq!(got, family);
    }
}

#[test]
fn search_is_deterministic_across_workers() {
    let runs: Vec<_> = [1, 4, 8]
        .into_iter()
        .map(|jobs| {
            let mut s = SearchSpec::new(7, &[PatternTag::P]);
            s.jobs = jobs;
            turan::higher_order_chain(7, &[PatternTag::P], 4, &s)
                .unwrap()
                .into_iter()
                .map(|r| (r.value, r.family, r.stats.nodes))
                .collect::<Vec<_>>()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[1], runs[2]);
}

#[test]
fn ramsey_values_up_to_nine_colors() {
    let reg = Registry::paper();
    for r in 1..=9 {
        let res = ramsey::ramsey(r, &reg).unwrap();
        assert_eq!(res.value, Some(r + 6), "r = {r}: {:?}", res.gap);
        let rep = ramsey::verify_certificate(res.upper.as_ref().unwrap(), &reg);
        assert!(rep.ok(), "r = {r}: {:?}", rep.failures);
        assert!(res.lower.unwrap().verify().is_ok());
    }
    let gap = ramsey::ramsey(10, &reg).unwrap();
    assert_eq!(gap.value, None);
    assert!(gap.gap.is_some());
}
