//! Naive reference implementations over plain vectors. None of them touch
//! the bitmask representation or the library's enumerators.

#![allow(dead_code)]

use oredeg::Hypergraph;

/// Every `r`-subset of `1..=n`, lexicographic, by recursion.
pub fn combos(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            go(v + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, r, &mut Vec::new(), &mut out);
    out
}

pub fn edge_lists(h: &Hypergraph) -> Vec<Vec<usize>> {
    h.edges().iter().map(|e| e.to_vec()).collect()
}

pub fn naive_degree(edges: &[Vec<usize>], v: usize) -> u128 {
    edges.iter().filter(|e| e.contains(&v)).count() as u128
}

/// Minimum degree sum over non-edge `r`-sets; `None` when every `r`-set is an edge.
pub fn naive_sigma(n: usize, r: usize, edges: &[Vec<usize>]) -> Option<u128> {
    combos(n, r)
        .into_iter()
        .filter(|s| !edges.contains(s))
        .map(|s| s.iter().map(|&v| naive_degree(edges, v)).sum())
        .min()
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| !b.contains(v))
}

/// Largest pairwise-disjoint subfamily, over all `2^m` subsets.
pub fn naive_nu(edges: &[Vec<usize>]) -> usize {
    let m = edges.len();
    assert!(m <= 20, "brute force over 2^{m} subsets");
    let mut best = 0;
    for mask in 0u32..(1 << m) {
        let chosen: Vec<&Vec<usize>> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| &edges[i]).collect();
        let ok = chosen
            .iter()
            .enumerate()
            .all(|(i, a)| chosen[i + 1..].iter().all(|b| disjoint(a, b)));
        if ok {
            best = best.max(chosen.len());
        }
    }
    best
}

/// Whether some tuple `(e_1, ..., e_s)` with `e_i` from family `i` is
/// pairwise disjoint with pairwise distinct colors.
pub fn naive_rainbow(fams: &[Vec<(Vec<usize>, u32)>]) -> bool {
    fn go(fams: &[Vec<(Vec<usize>, u32)>], picked: &mut Vec<(Vec<usize>, u32)>) -> bool {
        let i = picked.len();
        if i == fams.len() {
            let ok =
                (0..i).all(|a| (a + 1..i).all(|b| picked[a].1 != picked[b].1 && disjoint(&picked[a].0, &picked[b].0)));
            return ok;
        }
        for cand in &fams[i] {
            picked.push(cand.clone());
            if go(fams, picked) {
                return true;
            }
            picked.pop();
        }
        false
    }
    go(fams, &mut Vec::new())
}

/// `C(a, b)` by the additive recurrence, `0` outside `0 <= b <= a`.
pub fn pascal(a: i64, b: i64) -> u128 {
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    let (a, b) = (a as usize, b as usize);
    let mut row = vec![1u128];
    for _ in 0..a {
        let mut next = vec![1u128; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    row[b]
}
