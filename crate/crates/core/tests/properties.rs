//! Structural invariants over arbitrary small uniform hypergraphs.

mod common;

use common::{combos, edge_lists, naive_nu};
use oredeg::hgf;
use oredeg::matching::max_matching;
use oredeg::{Hypergraph, OreDegree, VertexSet};
use proptest::prelude::*;

/// `(n, r)` with `1 <= r <= n <= 9`, plus a membership mask over the
/// lexicographic list of `r`-sets.
fn arb_hypergraph() -> impl Strategy<Value = Hypergraph> {
    (1usize..=9)
        .prop_flat_map(|n| (Just(n), 1usize..=n.min(4)))
        .prop_flat_map(|(n, r)| {
            let all = combos(n, r);
            proptest::collection::vec(any::<bool>(), all.len()).prop_map(move |mask| {
                let picked: Vec<Vec<usize>> = all
                    .iter()
                    .zip(&mask)
                    .filter(|(_, &keep)| keep)
                    .map(|(e, _)| e.clone())
                    .collect();
                Hypergraph::new(n, r, &picked).unwrap()
            })
        })
}

fn with_extra_edge(h: &Hypergraph, pick: usize) -> Hypergraph {
    let all = combos(h.n(), h.r());
    let mut edges = edge_lists(h);
    edges.push(all[pick % all.len()].clone());
    Hypergraph::new(h.n(), h.r(), &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn degree_sum_counts_each_edge_r_times(h in arb_hypergraph()) {
        let total: u64 = (1..=h.n()).map(|v| h.degree(v)).sum();
        prop_assert_eq!(total, (h.r() * h.len()) as u64);
    }

    #[test]
    fn link_size_is_degree(h in arb_hypergraph(), x in 1usize..=9) {
        prop_assume!(x <= h.n() && h.r() >= 2);
        prop_assert_eq!(h.link(x).unwrap().len() as u64, h.degree(x));
    }

    #[test]
    fn ore_witness_is_a_minimising_non_edge(h in arb_hypergraph()) {
        let res = h.ore_degree();
        match res.value {
            OreDegree::Unbounded => prop_assert!(h.is_complete() && res.witness.is_none()),
            OreDegree::Finite(s) => {
                let w = res.witness.unwrap();
                prop_assert_eq!(w.len(), h.r());
                prop_assert!(!h.contains_edge(w));
                prop_assert_eq!(h.set_degree(w).unwrap(), s);
            }
        }
    }

    #[test]
    fn ore_degree_never_drops_when_an_edge_is_added(h in arb_hypergraph(), pick in any::<usize>()) {
        let g = with_extra_edge(&h, pick);
        let (a, b) = (h.ore_degree().value, g.ore_degree().value);
        match (a, b) {
            (_, OreDegree::Unbounded) => {}
            (OreDegree::Finite(x), OreDegree::Finite(y)) => prop_assert!(y >= x),
            (OreDegree::Unbounded, OreDegree::Finite(_)) => prop_assert!(false, "complete family lost its completeness"),
        }
    }

    #[test]
    fn matching_number_is_monotone_and_bounded(h in arb_hypergraph(), pick in any::<usize>()) {
        let (nu, m) = max_matching(&h);
        prop_assert!(m.is_valid_in(&h));
        prop_assert_eq!(m.size(), nu);
        prop_assert!(nu <= h.n() / h.r());
        let g = with_extra_edge(&h, pick);
        let nu2 = max_matching(&g).0;
        prop_assert!(nu2 == nu || nu2 == nu + 1);
        if h.len() <= 16 {
            prop_assert_eq!(nu, naive_nu(&edge_lists(&h)));
        }
    }

    #[test]
    fn star_families_are_intersecting(h in arb_hypergraph()) {
        if let Ok(Some(c)) = h.trivial_star_center() {
            prop_assert!(h.is_intersecting());
            prop_assert!(h.edges().iter().all(|e| e.contains(c)));
        }
    }

    #[test]
    fn pairwise_minimum_characterises_intersecting(h in arb_hypergraph()) {
        prop_assume!(h.len() >= 2);
        let t = h.min_pairwise_intersection().unwrap();
        prop_assert_eq!(t >= 1, h.is_intersecting());
        prop_assert_eq!(h.disjoint_pair().is_some(), !h.is_intersecting());
        prop_assert_eq!(h.pairs_below_intersection(t), 0);
        prop_assert!(h.pairs_below_intersection(t + 1) > 0);
    }

    #[test]
    fn common_intersection_lies_in_every_edge(h in arb_hypergraph()) {
        let c = h.common_intersection();
        prop_assert!(h.edges().iter().all(|&e| c.is_subset(e)));
    }

    #[test]
    fn hgf_round_trip(h in arb_hypergraph()) {
        let text = hgf::serialize(&h);
        let parsed = hgf::parse(&text).unwrap();
        prop_assert_eq!(&parsed.hypergraph, &h);
        prop_assert_eq!(hgf::serialize(&parsed.hypergraph), text);
    }

    #[test]
    fn vertex_set_algebra(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (to_set(a), to_set(b));
        prop_assert_eq!(x.union(y).len() + x.intersection(y).len(), x.len() + y.len());
        prop_assert_eq!(x.meets(y), !x.is_disjoint(y));
        prop_assert!(x.difference(y).is_disjoint(y));
        prop_assert!(x.intersection(y).is_subset(x));
    }
}

fn to_set(bits: u64) -> VertexSet {
    let mut s = VertexSet::EMPTY;
    for v in 1..=64 {
        if bits >> (v - 1) & 1 == 1 {
            s.insert(v);
        }
    }
    s
}
