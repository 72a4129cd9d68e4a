//! Library results against the naive references in `common`, on seeded
//! random instances and on the named constructions.

mod common;

use common::{combos, edge_lists, naive_degree, naive_nu, naive_rainbow, naive_sigma, pascal};
use oredeg::constructions::{cover_family, hilton_milner, one_star, perfect_matching};
use oredeg::hgf;
use oredeg::matching::{has_matching, max_matching, rainbow_matching, rooted_matching};
use oredeg::setcore::check_sandwich_inequality;
use oredeg::verify::sample::{greedy_proper_coloring, random_hypergraph, random_set, random_with_edges};
use oredeg::verify::{assess, averaging_lower_bound, Entry, Instance, Params, Status};
use oredeg::{binom, enumerate_subsets, eval_bound, BoundFormula, ColoredHypergraph, Hypergraph, OreDegree, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn binomials_match_pascal_triangle() {
    for a in 0..=60i64 {
        for b in 0..=a {
            assert_eq!(binom(a, b).unwrap(), pascal(a, b), "C({a},{b})");
            assert_eq!(binom(a, b).unwrap(), binom(a, a - b).unwrap());
            if b >= 1 && a >= 1 {
                assert_eq!(
                    binom(a, b).unwrap(),
                    binom(a - 1, b - 1).unwrap() + binom(a - 1, b).unwrap()
                );
            }
        }
    }
    for n in 0..=16usize {
        for r in 0..=n {
            let count = enumerate_subsets(n, r).unwrap().count() as u128;
            assert_eq!(count, pascal(n as i64, r as i64));
            assert_eq!(count as usize, combos(n, r).len());
        }
    }
}

#[test]
fn sandwich_holds_on_the_full_grid() {
    // c = 1 collapses both sides to equalities, so the strict form starts at c = 2
    for a in 4..=30i64 {
        for b in 2..=a {
            for c in 2..=a - b {
                assert!(check_sandwich_inequality(a, b, c).unwrap(), "a={a} b={b} c={c}");
            }
        }
    }
}

#[test]
fn ore_degree_matches_naive_scan() {
    let mut g = rng(11);
    for _ in 0..300 {
        let r = g.gen_range(1..=4);
        let n = g.gen_range(r..=8);
        let h = random_hypergraph(n, r, g.gen_range(0.0..1.0), &mut g).unwrap();
        let edges = edge_lists(&h);
        let res = h.ore_degree();
        match naive_sigma(n, r, &edges) {
            None => assert_eq!(res.value, OreDegree::Unbounded),
            Some(s) => {
                assert_eq!(res.value, OreDegree::Finite(s));
                let w = res.witness.unwrap();
                assert_eq!(w.len(), r);
                assert!(!h.contains_edge(w));
                assert_eq!(w.iter().map(|v| naive_degree(&edges, v)).sum::<u128>(), s);
            }
        }
    }
}

#[test]
fn max_matching_matches_subset_brute_force() {
    let mut g = rng(5);
    for _ in 0..500 {
        let r = g.gen_range(2..=4);
        let n = g.gen_range(r..=12);
        let m = g.gen_range(0..=12);
        let h = random_with_edges(n, r, m, &mut g).unwrap();
        let (nu, mt) = max_matching(&h);
        assert_eq!(nu, naive_nu(&edge_lists(&h)), "{h:?}");
        assert_eq!(mt.size(), nu);
        assert!(mt.is_valid_in(&h));
        assert!(nu <= n / r);
        assert!(has_matching(&h, nu).is_some());
        assert!(has_matching(&h, nu + 1).is_none());
    }
}

/// Random proper colorings that reuse colors across families.
fn colored_family(n: usize, r: usize, m: usize, g: &mut ChaCha8Rng) -> ColoredHypergraph {
    let h = random_with_edges(n, r, m, g).unwrap();
    let greedy = greedy_proper_coloring(&h);
    let k = greedy.iter().copied().max().unwrap_or(0) as usize;
    let mut relabel: Vec<u32> = (1..=(k + 2) as u32).collect();
    relabel.shuffle(g);
    let colors = greedy.iter().map(|&c| relabel[c as usize - 1]).collect();
    ColoredHypergraph::new(h, colors).unwrap()
}

#[test]
fn rainbow_matching_matches_tuple_brute_force() {
    let mut g = rng(8);
    for _ in 0..200 {
        let s = g.gen_range(1..=3);
        let n = g.gen_range(3..=10);
        let fams: Vec<ColoredHypergraph> = (0..s)
            .map(|_| colored_family(n, 3, g.gen_range(0..=8), &mut g))
            .collect();
        let plain: Vec<Vec<(Vec<usize>, u32)>> = fams
            .iter()
            .map(|f| f.iter().map(|(e, c)| (e.to_vec(), c)).collect())
            .collect();
        let found = rainbow_matching(&fams).unwrap();
        assert_eq!(found.is_some(), naive_rainbow(&plain));
        if let Some(a) = found {
            assert!(a.is_valid_for(&fams));
        }
    }
}

#[test]
fn rainbow_with_one_family_is_nonemptiness() {
    let mut g = rng(2);
    for _ in 0..50 {
        let h = random_hypergraph(6, 3, g.gen_range(0.0..0.2), &mut g).unwrap();
        let colors = (1..=h.len() as u32).collect();
        let f = ColoredHypergraph::new(h.clone(), colors).unwrap();
        assert_eq!(rainbow_matching(&[f]).unwrap().is_some(), !h.is_empty());
    }
}

#[test]
fn lemma_2_2_on_random_families() {
    let mut g = rng(22);
    for (n, r) in [(8, 2), (9, 3), (10, 3), (12, 4)] {
        for _ in 0..1000 {
            let h = random_hypergraph(n, r, g.gen_range(0.02..0.98), &mut g).unwrap();
            let Some(sigma) = h.ore_degree().value.finite() else {
                continue;
            };
            let lhs = (r * r * h.len()) as u128;
            assert!(lhs >= n as u128 * sigma, "n={n} r={r}");
            if lhs == n as u128 * sigma {
                assert!(h.regular_degree().is_some());
            }
        }
    }
    let pm = perfect_matching(4, 2).unwrap();
    assert_eq!((pm.len(), pm.ore_degree().value), (2, OreDegree::Finite(2)));
    assert_eq!(2 * 2 * pm.len(), 4 * 2);
    assert_eq!(pm.regular_degree(), Some(1));
}

/// Random `X` spanning no edge, grown vertex by vertex in random order.
fn independent_set(h: &Hypergraph, g: &mut ChaCha8Rng) -> VertexSet {
    let mut order: Vec<usize> = (1..=h.n()).collect();
    order.shuffle(g);
    let mut x = VertexSet::EMPTY;
    for v in order {
        let mut y = x;
        y.insert(v);
        if !h.edges().iter().any(|e| e.is_subset(y)) {
            x = y;
        }
    }
    x
}

#[test]
fn averaging_bound_on_random_pairs() {
    let mut g = rng(31);
    for (n, r) in [(8, 2), (9, 3), (10, 3), (12, 4)] {
        let mut tested = 0;
        while tested < 100 {
            let h = random_hypergraph(n, r, g.gen_range(0.02..0.3), &mut g).unwrap();
            let x = independent_set(&h, &mut g);
            let Some(sigma) = h.ore_degree().value.finite() else {
                continue;
            };
            if x.len() < r {
                assert!(averaging_lower_bound(&h, x).is_err());
                continue;
            }
            let b = averaging_lower_bound(&h, x).unwrap();
            assert_eq!(b, x.len() as u128 * sigma / r as u128);
            let edges = edge_lists(&h);
            let actual: u128 = x.iter().map(|v| naive_degree(&edges, v)).sum();
            assert!(actual >= b);
            tested += 1;
        }
    }
}

#[test]
fn rooted_matching_under_the_degree_hypothesis() {
    let mut g = rng(44);
    let mut confirmed = 0;
    for _ in 0..400 {
        let r = g.gen_range(2..=3);
        let s = g.gen_range(1..=3);
        let n = g.gen_range(r * s + 1..=r * s + 5);
        let h = random_hypergraph(n, r, g.gen_range(0.3..1.0), &mut g).unwrap();
        let mut roots: Vec<usize> = (1..=n).collect();
        roots.shuffle(&mut g);
        roots.truncate(s);
        let p = Params {
            roots: Some(roots.clone()),
            ..Params::default()
        };
        let v = assess(Entry::L2_10, &Instance::Single(h.clone()), &p).unwrap();
        assert_ne!(v.status, Status::Violation);
        if v.hypothesis_holds {
            confirmed += 1;
            let m = rooted_matching(&h, &roots).unwrap().unwrap();
            assert!(m.is_valid_in(&h));
            for (e, &v) in m.edges.iter().zip(&roots) {
                assert!(e.contains(v));
            }
        }
    }
    assert!(confirmed > 0);
}

#[test]
fn star_invariants() {
    for r in 1..=4 {
        for n in r..=12 {
            for x in [1, n / 2 + 1, n] {
                let h = one_star(n, r, x).unwrap();
                assert_eq!(h.len() as u128, pascal(n as i64 - 1, r as i64 - 1));
                assert!(h.is_intersecting());
                assert!(h.common_intersection().contains(x));
                let cover = cover_family(n, r, VertexSet::singleton(x)).unwrap();
                assert_eq!(cover.edges(), h.edges());
            }
        }
    }
    let h = one_star(9, 3, 4).unwrap();
    assert_eq!(h.trivial_star_center().unwrap(), Some(4));
}

#[test]
fn hilton_milner_invariants() {
    let mut g = rng(3);
    for r in 3..=4 {
        for n in 2 * r + 1..=12 {
            for _ in 0..3 {
                let x = g.gen_range(1..=n);
                let base = loop {
                    let s = random_set(n, r, &mut g);
                    if !s.contains(x) {
                        break s;
                    }
                };
                let h = hilton_milner(n, r, x, base).unwrap();
                assert!(h.is_intersecting());
                assert!(h.common_intersection().is_empty());
                assert_eq!(h.hm_subfamily_witness(), Some((x, base)));
                let size = pascal(n as i64 - 1, r as i64 - 1) - pascal(n as i64 - r as i64 - 1, r as i64 - 1) + 1;
                assert_eq!(h.len() as u128, size);
            }
        }
    }
}

#[test]
fn sharpness_of_the_ore_bounds() {
    for r in 3..=4usize {
        for n in 2 * r + 2..=14 {
            let (ni, ri) = (n as i64, r as i64);
            let ekr = r as u128 * pascal(ni - 2, ri - 2);
            let star = one_star(n, r, 1).unwrap();
            assert_eq!(star.ore_degree().value, OreDegree::Finite(ekr));
            assert_eq!(eval_bound(BoundFormula::EkrOre { n, r }).unwrap(), ekr);
            let hm_ore = r as u128 * (pascal(ni - 2, ri - 2) - pascal(ni - ri - 2, ri - 2));
            let hm = hilton_milner(n, r, 1, VertexSet::range(2, r + 1)).unwrap();
            assert_eq!(hm.ore_degree().value, OreDegree::Finite(hm_ore));
            assert_eq!(eval_bound(BoundFormula::HmOre { n, r }).unwrap(), hm_ore);
        }
    }
    // the naive scan agrees on the smaller orders
    for n in 8..=10 {
        let star = one_star(n, 3, 1).unwrap();
        assert_eq!(naive_sigma(n, 3, &edge_lists(&star)), Some(3 * (n as u128 - 2)));
    }
    for s in 2..=4usize {
        for n in 3 * s..=15 {
            let cover = cover_family(n, 3, VertexSet::range(1, s - 1)).unwrap();
            let (ni, si) = (n as i64, s as i64);
            let expected = 3 * (pascal(ni - 1, 2) - pascal(ni - si, 2));
            assert_eq!(cover.ore_degree().value, OreDegree::Finite(expected), "n={n} s={s}");
            assert_eq!(max_matching(&cover).0, s - 1);
        }
    }
}

#[test]
fn hgf_round_trip_is_a_fixed_point() {
    let mut g = rng(17);
    for k in 0..1000 {
        let r = g.gen_range(1..=5);
        let n = g.gen_range(r..=12);
        let h = random_hypergraph(n, r, g.gen_range(0.0..0.6), &mut g).unwrap();
        let text = if k % 3 == 0 && !h.is_empty() {
            let colors: Vec<u32> = (0..h.len()).map(|_| g.gen_range(1..=4)).collect();
            hgf::serialize_colored(&h, &colors).unwrap()
        } else {
            hgf::serialize(&h)
        };
        let parsed = hgf::parse(&text).unwrap();
        assert_eq!(parsed.hypergraph, h);
        assert_eq!(hgf::serialize_file(&parsed), text);
    }
}

#[test]
fn combos_oracle_agrees_with_stream_order() {
    let ours: Vec<Vec<usize>> = enumerate_subsets(7, 3).unwrap().map(|s| s.to_vec()).collect();
    let mut naive = combos(7, 3);
    naive.sort_by_key(|v| v.iter().map(|&x| 1u128 << (x - 1)).sum::<u128>());
    assert_eq!(ours, naive);
}
