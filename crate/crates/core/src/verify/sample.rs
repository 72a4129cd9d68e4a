//! Seeded random instances inside each entry's parameter domain, and the
//! soundness battery that runs them through the registry.
//!
//! Uniformly random families almost never satisfy the hypotheses, so each
//! generator mixes plain random families with perturbed extremal ones
//! (subfamilies of stars, Hilton-Milner and cover families, greedy maximal
//! intersecting families). Everything is driven by one `ChaCha8Rng`.

use rand::seq::index;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{clique_family, cover_family, fano, hilton_milner, one_star, perfect_matching, t_star};
use crate::error::Result;
use crate::hypergraph::{ColoredHypergraph, Hypergraph};
use crate::setcore::{binom_u, enumerate_subsets};
use crate::vset::VertexSet;

use super::registry::{assess, Entry, Instance, Params, Status};

/// Families with at most this many possible edges are sampled by
/// enumerating all `r`-sets; larger ones draw random `r`-sets.
const ENUMERATE_CAP: u128 = 4096;

#[derive(Clone, Debug)]
pub struct Sample {
    pub instance: Instance,
    pub params: Params,
}

/// A uniformly random `r`-subset of `[n]`.
pub fn random_set(n: usize, r: usize, rng: &mut ChaCha8Rng) -> VertexSet {
    let mut s = VertexSet::EMPTY;
    for i in index::sample(rng, n, r) {
        s.insert(i + 1);
    }
    s
}

/// Each `r`-set of `[n]` independently with probability `p`.
pub fn random_hypergraph(n: usize, r: usize, p: f64, rng: &mut ChaCha8Rng) -> Result<Hypergraph> {
    let sets = enumerate_subsets(n, r)?.filter(|_| rng.gen_bool(p)).collect::<Vec<_>>();
    Hypergraph::from_sets(n, r, sets)
}

/// `m` distinct random `r`-sets (fewer if `[n]` has fewer).
pub fn random_with_edges(n: usize, r: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<Hypergraph> {
    let total = binom_u(n, r)?;
    if total <= ENUMERATE_CAP {
        let mut all: Vec<VertexSet> = enumerate_subsets(n, r)?.collect();
        all.shuffle(rng);
        all.truncate(m);
        return Hypergraph::from_sets(n, r, all);
    }
    let m = m.min(total as usize);
    let mut sets = std::collections::BTreeSet::new();
    while sets.len() < m {
        sets.insert(random_set(n, r, rng));
    }
    Hypergraph::from_sets(n, r, sets)
}

/// Candidate `r`-sets in random order: all of them when few, else `draws`
/// random ones.
fn candidates(n: usize, r: usize, draws: usize, rng: &mut ChaCha8Rng) -> Result<Vec<VertexSet>> {
    if binom_u(n, r)? <= ENUMERATE_CAP {
        let mut all: Vec<VertexSet> = enumerate_subsets(n, r)?.collect();
        all.shuffle(rng);
        Ok(all)
    } else {
        Ok((0..draws).map(|_| random_set(n, r, rng)).collect())
    }
}

/// Greedy random `t`-intersecting family: scans random candidates, seeded
/// with `seed`, keeping each that meets every kept edge in `t` vertices.
pub fn random_t_intersecting(
    n: usize,
    r: usize,
    t: usize,
    target: usize,
    seed: &[VertexSet],
    rng: &mut ChaCha8Rng,
) -> Result<Hypergraph> {
    let mut kept: Vec<VertexSet> = Vec::new();
    for &e in seed.iter().chain(candidates(n, r, 8 * target.max(8), rng)?.iter()) {
        if kept.len() >= target {
            break;
        }
        if !kept.contains(&e) && kept.iter().all(|f| f.intersection(e).len() >= t) {
            kept.push(e);
        }
    }
    Hypergraph::from_sets(n, r, kept)
}

/// Keeps each edge with probability `p`.
pub fn random_subfamily(h: &Hypergraph, p: f64, rng: &mut ChaCha8Rng) -> Result<Hypergraph> {
    let sets: Vec<VertexSet> = h.edges().iter().copied().filter(|_| rng.gen_bool(p)).collect();
    Hypergraph::from_sets(h.n(), h.r(), sets)
}

/// Adds `k` random edges.
fn add_random(h: &Hypergraph, k: usize, rng: &mut ChaCha8Rng) -> Result<Hypergraph> {
    let mut sets = h.edges().to_vec();
    for _ in 0..k {
        sets.push(random_set(h.n(), h.r(), rng));
    }
    sets.sort();
    sets.dedup();
    Hypergraph::from_sets(h.n(), h.r(), sets)
}

fn random_base_edge(n: usize, r: usize, x: usize, rng: &mut ChaCha8Rng) -> VertexSet {
    loop {
        let s = random_set(n, r, rng);
        if !s.contains(x) {
            return s;
        }
    }
}

/// An intersecting family of one of several shapes.
fn intersecting(n: usize, r: usize, rng: &mut ChaCha8Rng) -> Result<Hypergraph> {
    let x = rng.gen_range(1..=n);
    let cap = binom_u(n - 1, r - 1)? as usize;
    match rng.gen_range(0..7) {
        0 => random_subfamily(&one_star(n, r, x)?, rng.gen_range(0.3..1.0), rng),
        1 => one_star(n, r, x),
        2 if n >= 2 * r => {
            let hm = hilton_milner(n, r, x, random_base_edge(n, r, x, rng))?;
            random_subfamily(&hm, rng.gen_range(0.5..1.0), rng)
        }
        3 if n >= 2 * r => hilton_milner(n, r, x, random_base_edge(n, r, x, rng)),
        4 if 2 * r - 1 <= n => {
            let support = VertexSet::from_vertices(n, &pick(n, 2 * r - 1, rng))?;
            random_subfamily(&clique_family(n, r, support)?, rng.gen_range(0.5..1.0), rng)
        }
        5 if r >= 2 && n >= 3 => {
            // sets meeting a fixed triple at least twice
            let t = VertexSet::from_vertices(n, &pick(n, 3, rng))?;
            let sets: Vec<VertexSet> = enumerate_subsets(n, r)?
                .filter(|e| e.intersection(t).len() >= 2)
                .collect();
            let h = Hypergraph::from_sets(n, r, sets)?;
            random_subfamily(&h, rng.gen_range(0.5..1.0), rng)
        }
        _ => random_t_intersecting(n, r, 1, rng.gen_range(1..=cap.max(1)), &[], rng),
    }
}

/// A non-trivial intersecting family (falls back to possibly trivial ones).
fn nontrivial_intersecting(n: usize, r: usize, rng: &mut ChaCha8Rng) -> Result<Hypergraph> {
    for _ in 0..8 {
        let h = intersecting(n, r, rng)?;
        if !h.is_empty() && h.common_intersection().is_empty() {
            return Ok(h);
        }
    }
    let x = rng.gen_range(1..=n);
    hilton_milner(n, r, x, random_base_edge(n, r, x, rng))
}

fn pick(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut v: Vec<usize> = index::sample(rng, n, k).into_iter().map(|i| i + 1).collect();
    v.sort_unstable();
    v
}

/// Greedy proper coloring in canonical edge order; colors start at 1.
pub fn greedy_proper_coloring(h: &Hypergraph) -> Vec<u32> {
    // per-vertex bitsets of used colors; bit k is color k + 1
    let mut used: Vec<Vec<u64>> = vec![Vec::new(); h.n() + 1];
    let mut colors = Vec::with_capacity(h.len());
    for e in h.edges() {
        let words = e.iter().map(|v| used[v].len()).max().unwrap_or(0) + 1;
        let mut k = 0;
        for w in 0..words {
            let busy = e.iter().fold(0u64, |acc, v| acc | used[v].get(w).copied().unwrap_or(0));
            if busy != u64::MAX {
                k = w * 64 + busy.trailing_ones() as usize;
                break;
            }
        }
        for v in e.iter() {
            if used[v].len() <= k / 64 {
                used[v].resize(k / 64 + 1, 0);
            }
            used[v][k / 64] |= 1 << (k % 64);
        }
        colors.push(k as u32 + 1);
    }
    colors
}

fn single(h: Hypergraph, params: Params) -> Sample {
    Sample {
        instance: Instance::Single(h),
        params,
    }
}

fn with_s(s: usize) -> Params {
    Params {
        s: Some(s),
        ..Params::default()
    }
}

/// A cover family for `s` plus a few random edges, or a dense random family.
fn near_cover(n: usize, r: usize, s: usize, rng: &mut ChaCha8Rng) -> Result<Hypergraph> {
    let cover = VertexSet::from_vertices(n, &pick(n, s - 1, rng))?;
    let base = cover_family(n, r, cover)?;
    match rng.gen_range(0..3) {
        0 => Ok(base),
        1 => add_random(&base, rng.gen_range(1..=4), rng),
        _ => {
            let total = binom_u(n, r)? as usize;
            let lo = base.len().min(total);
            random_with_edges(n, r, rng.gen_range(lo..=total), rng)
        }
    }
}

/// Random in-domain instance for `entry`.
pub fn sample(entry: Entry, rng: &mut ChaCha8Rng) -> Result<Sample> {
    Ok(match entry {
        Entry::T1_2 => {
            let r = rng.gen_range(2..=3);
            let n = rng.gen_range(2 * r + 1..=2 * r + 4);
            let h = match rng.gen_range(0..4) {
                0 => one_star(n, r, rng.gen_range(1..=n))?,
                1 => add_random(&one_star(n, r, rng.gen_range(1..=n))?, rng.gen_range(0..3), rng)?,
                2 => intersecting(n, r, rng)?,
                _ => random_hypergraph(n, r, rng.gen_range(0.2..0.9), rng)?,
            };
            single(h, Params::default())
        }
        Entry::C1_1 | Entry::T1_3 => {
            let s = rng.gen_range(2..=3);
            let r = rng.gen_range(2..=3);
            let lo = if entry == Entry::T1_3 {
                (2 * s - 1) * r - (s - 1)
            } else {
                r * s - 1
            };
            let n = rng.gen_range(lo..=lo + 3);
            let h = match rng.gen_range(0..3) {
                0 if n >= r * s - 1 => {
                    let support = VertexSet::from_vertices(n, &pick(n, r * s - 1, rng))?;
                    add_random(&clique_family(n, r, support)?, rng.gen_range(0..3), rng)?
                }
                _ => near_cover(n, r, s, rng)?,
            };
            single(h, with_s(s))
        }
        Entry::T1_4 => {
            let r = 3;
            let n = rng.gen_range(2 * r + 2..=2 * r + 5);
            single(intersecting(n, r, rng)?, Params::default())
        }
        Entry::T1_5 | Entry::P4_1 => {
            let r = 3;
            let n = rng.gen_range(r * r * (r - 1)..=r * r * (r - 1) + 3);
            single(nontrivial_intersecting(n, r, rng)?, Params::default())
        }
        Entry::T1_6 | Entry::C8_1 => {
            let (r, s) = if rng.gen_bool(0.5) {
                (2, rng.gen_range(2..=3))
            } else {
                (3, 2)
            };
            let lo = if entry == Entry::T1_6 {
                3 * r * r * (s - 1)
            } else {
                r * s + 1
            };
            let n = rng.gen_range(lo..=lo + 2);
            single(near_cover(n, r, s, rng)?, with_s(s))
        }
        Entry::T1_7 | Entry::T1_8 => {
            let (r, s) = if entry == Entry::T1_7 { (3, 2) } else { (2, 2) };
            let n = 3 * r * r * s + 1;
            let total = binom_u(n, r)? as usize;
            let mut fams = Vec::with_capacity(s);
            for _ in 0..s {
                let h = if entry == Entry::T1_8 {
                    near_cover(n, r, s, rng)?
                } else {
                    random_with_edges(n, r, rng.gen_range(total / 20..=total / 10), rng)?
                };
                let colors = greedy_proper_coloring(&h);
                fams.push(ColoredHypergraph::new(h, colors)?);
            }
            Sample {
                instance: Instance::Colored(fams),
                params: Params::default(),
            }
        }
        Entry::T1_9 | Entry::T1_9D | Entry::T2_11 => {
            let r = rng.gen_range(2..=3);
            let n = match entry {
                Entry::T1_9 if r == 2 => rng.gen_range(16..=18),
                Entry::T1_9 => 36,
                _ => rng.gen_range(2 * r + 1..=2 * r + 4),
            };
            let (a, b) = cross_pair(n, r, entry == Entry::T2_11, rng)?;
            Sample {
                instance: Instance::Pair(a, b),
                params: Params::default(),
            }
        }
        Entry::O2_1 => {
            let r = rng.gen_range(2..=3);
            let n = rng.gen_range(r..=r + 5);
            let h = random_hypergraph(n, r, rng.gen_range(0.1..1.0), rng)?;
            let sub = random_subfamily(&h, rng.gen_range(0.0..1.0), rng)?;
            Sample {
                instance: Instance::Pair(sub, h),
                params: Params::default(),
            }
        }
        Entry::L2_2 => {
            let r = rng.gen_range(2..=4);
            let n = rng.gen_range(r + 1..=r + 6);
            let h = match rng.gen_range(0..4) {
                0 if n % r == 0 => perfect_matching(n, r)?,
                1 => one_star(n, r, rng.gen_range(1..=n))?,
                _ => random_hypergraph(n, r, rng.gen_range(0.05..0.95), rng)?,
            };
            single(h, Params::default())
        }
        Entry::T2_3 | Entry::L2_4 => {
            let r = rng.gen_range(2..=3);
            let lo = if entry == Entry::T2_3 { r } else { 2 * r + 1 };
            let n = rng.gen_range(lo.max(2 * r - 1)..=2 * r + 4);
            let h = match rng.gen_range(0..4) {
                0 if r == 3 && n == 7 => fano(),
                0 | 1 => {
                    let support = VertexSet::range(1, 2 * r - 1);
                    clique_family(n, r, support)?
                }
                _ => intersecting(n, r, rng)?,
            };
            single(h, Params::default())
        }
        Entry::T2_5 | Entry::T2_7 => {
            let r = if entry == Entry::T2_7 { 4 } else { 3 };
            let n = rng.gen_range(2 * r + 1..=2 * r + 4);
            single(nontrivial_intersecting(n, r, rng)?, Params::default())
        }
        Entry::T2_6 => {
            let r = rng.gen_range(2..=3);
            let n = rng.gen_range(2 * r + 1..=2 * r + 4);
            let i = rng.gen_range(2..=r);
            let p = Params {
                i: if rng.gen_bool(0.5) { Some(i) } else { None },
                ..Params::default()
            };
            single(intersecting(n, r, rng)?, p)
        }
        Entry::T2_8 => {
            let (r, l) = (3, 4);
            let n = rng.gen_range(r * l..=r * l + 2);
            let ts = [
                VertexSet::range(1, l),
                VertexSet::range(l + 1, 2 * l),
                VertexSet::range(2 * l + 1, 3 * l),
            ];
            let meets = |e: &VertexSet| ts.iter().all(|t| e.meets(*t));
            let seed: Vec<VertexSet> = candidates(n, r, 2000, rng)?.into_iter().filter(meets).collect();
            let h = random_t_intersecting(n, r, 1, rng.gen_range(1..=seed.len().max(1)), &seed, rng)?;
            let keep: Vec<VertexSet> = h.edges().iter().copied().filter(meets).collect();
            let p = Params {
                l: Some(l),
                ..Params::default()
            };
            single(Hypergraph::from_sets(n, r, keep)?, p)
        }
        Entry::T2_9 => {
            let r = rng.gen_range(2..=4);
            let t = rng.gen_range(1..=r.min(3));
            let lo = (t + 1) * (r + 1 - t);
            let n = rng.gen_range(lo.max(r)..=lo.max(r) + 2);
            let h = if rng.gen_bool(0.3) && t < r {
                let tset = VertexSet::range(1, t);
                random_subfamily(&t_star(n, r, tset)?, rng.gen_range(0.5..1.0), rng)?
            } else {
                random_t_intersecting(n, r, t, binom_u(n, r)? as usize, &[], rng)?
            };
            let p = Params {
                t: Some(t),
                ..Params::default()
            };
            single(h, p)
        }
        Entry::L2_10 => {
            let r = rng.gen_range(2..=3);
            let s = rng.gen_range(1..=3);
            let n = rng.gen_range(r * s + 1..=r * s + 4);
            let h = random_hypergraph(n, r, rng.gen_range(0.3..1.0), rng)?;
            single(h, with_s(s))
        }
        Entry::L5_1 => {
            let n = rng.gen_range(4..=10);
            let s = rng.gen_range(1..=n / 2);
            let h = match rng.gen_range(0..3) {
                0 => near_cover(n, 2, s.max(2), rng)?,
                _ => random_hypergraph(n, 2, rng.gen_range(0.2..1.0), rng)?,
            };
            single(h, with_s(s))
        }
        Entry::Cor5 => {
            let r = 2;
            let sizes = vec![2, 1];
            let n = 3 * r * r + rng.gen_range(0..=2);
            let h = near_cover(n, r, 2, rng)?;
            let coloring = if rng.gen_bool(0.5) && !h.is_empty() {
                Some((0..h.len()).map(|_| rng.gen_range(1..=2u32)).collect())
            } else {
                None
            };
            let p = Params {
                sizes: Some(sizes),
                coloring,
                ..Params::default()
            };
            single(h, p)
        }
    })
}

/// A cross-intersecting pair; with `spread`, aims for empty common intersection.
fn cross_pair(n: usize, r: usize, spread: bool, rng: &mut ChaCha8Rng) -> Result<(Hypergraph, Hypergraph)> {
    let a = if spread {
        nontrivial_intersecting(n, r, rng)?
    } else {
        intersecting(n, r, rng)?
    };
    let a = if rng.gen_bool(0.3) && !a.is_empty() {
        random_subfamily(&a, 0.5, rng)?
    } else {
        a
    };
    let b_cands: Vec<VertexSet> = candidates(n, r, 4000, rng)?
        .into_iter()
        .filter(|e| a.edges().iter().all(|f| f.meets(*e)))
        .filter(|_| rng.gen_bool(0.7))
        .collect();
    let b = Hypergraph::from_sets(n, r, b_cands)?;
    Ok(if rng.gen_bool(0.5) { (a, b) } else { (b, a) })
}

/// The entries with proven conclusions, in registry order.
pub fn proven_entries() -> Vec<Entry> {
    Entry::ALL.iter().copied().filter(|e| !e.is_conjecture()).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BatteryLine {
    pub instances: usize,
    pub confirmed: usize,
    pub vacuous: usize,
    pub violations: usize,
    pub out_of_domain: usize,
}

/// Runs `per_entry` samples of `entry`, seeded by `(seed, entry)`.
pub fn battery(entry: Entry, per_entry: usize, seed: u64) -> Result<BatteryLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stream = Entry::ALL
        .iter()
        .position(|&e| e == entry)
        .expect("entry is registered");
    rng.set_stream(stream as u64);
    let mut line = BatteryLine::default();
    for _ in 0..per_entry {
        let s = sample(entry, &mut rng)?;
        let v = assess(entry, &s.instance, &s.params)?;
        line.instances += 1;
        if v.out_of_domain {
            line.out_of_domain += 1;
        }
        match v.status {
            Status::Confirmed => line.confirmed += 1,
            Status::Vacuous => line.vacuous += 1,
            Status::Violation => line.violations += 1,
        }
    }
    Ok(line)
}
