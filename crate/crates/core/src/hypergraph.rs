//! Explicit `r`-uniform hypergraphs on `[n]` with a cached degree profile.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::setcore::{enumerate_subsets, ExactInt};
use crate::vset::{VertexSet, MAX_VERTICES};

/// An `r`-uniform hypergraph on `[n]`.
///
/// Edges are kept sorted by bitmask value without duplicates, which makes
/// structural equality the same as family equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<VertexSet>,
    degrees: Vec<u64>,
}

/// Ore-degree value: finite, or unbounded when no non-edge `r`-set exists.
///
/// `Unbounded` compares greater than every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OreDegree {
    Finite(ExactInt),
    Unbounded,
}

impl OreDegree {
    pub fn finite(self) -> Option<ExactInt> {
        match self {
            OreDegree::Finite(v) => Some(v),
            OreDegree::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, OreDegree::Unbounded)
    }

    /// Strict comparison against a finite bound; `Unbounded` exceeds everything.
    pub fn exceeds(self, bound: ExactInt) -> bool {
        match self {
            OreDegree::Finite(v) => v > bound,
            OreDegree::Unbounded => true,
        }
    }
}

impl PartialEq<ExactInt> for OreDegree {
    fn eq(&self, other: &ExactInt) -> bool {
        matches!(self, OreDegree::Finite(v) if v == other)
    }
}

impl PartialOrd<ExactInt> for OreDegree {
    fn partial_cmp(&self, other: &ExactInt) -> Option<Ordering> {
        Some(match self {
            OreDegree::Finite(v) => v.cmp(other),
            OreDegree::Unbounded => Ordering::Greater,
        })
    }
}

impl fmt::Display for OreDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OreDegree::Finite(v) => write!(f, "{v}"),
            OreDegree::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// Result of [`Hypergraph::ore_degree`]: the value and, when finite, the
/// smallest (by bitmask) non-edge attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OreResult {
    pub value: OreDegree,
    pub witness: Option<VertexSet>,
}

impl Hypergraph {
    /// Builds a hypergraph from 1-based vertex lists; duplicate edges collapse.
    pub fn new(n: usize, r: usize, edge_list: &[Vec<usize>]) -> Result<Self> {
        check_universe(n, r)?;
        let mut sets = Vec::with_capacity(edge_list.len());
        for edge in edge_list {
            let set = VertexSet::from_vertices(n, edge)?;
            if set.len() != r || edge.len() != r {
                return Err(Error::WrongEdgeSize {
                    edge: format!("{edge:?}"),
                    found: set.len(),
                    expected: r,
                });
            }
            sets.push(set);
        }
        Self::from_sets(n, r, sets)
    }

    /// Builds a hypergraph from vertex sets; duplicate edges collapse.
    pub fn from_sets(n: usize, r: usize, sets: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        check_universe(n, r)?;
        let universe = VertexSet::full(n);
        let mut edges: Vec<VertexSet> = Vec::new();
        for set in sets {
            if !set.is_subset(universe) {
                let vertex = set.difference(universe).min_vertex().unwrap_or(0);
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            if set.len() != r {
                return Err(Error::WrongEdgeSize {
                    edge: set.to_string(),
                    found: set.len(),
                    expected: r,
                });
            }
            edges.push(set);
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_canonical(n, r, edges))
    }

    /// Caller guarantees `edges` is strictly increasing, `r`-uniform and inside `[n]`.
    pub(crate) fn from_canonical(n: usize, r: usize, edges: Vec<VertexSet>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.len() == r && e.is_subset(VertexSet::full(n))));
        let mut degrees = vec![0u64; n];
        for e in &edges {
            for v in e.iter() {
                degrees[v - 1] += 1;
            }
        }
        Hypergraph { n, r, edges, degrees }
    }

    pub fn empty(n: usize, r: usize) -> Result<Self> {
        check_universe(n, r)?;
        Ok(Self::from_canonical(n, r, Vec::new()))
    }

    /// Every `r`-subset of `[n]`.
    pub fn complete(n: usize, r: usize) -> Result<Self> {
        check_universe(n, r)?;
        Ok(Self::from_canonical(n, r, enumerate_subsets(n, r)?.collect()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn contains_edge(&self, set: VertexSet) -> bool {
        self.edges.binary_search(&set).is_ok()
    }

    /// Degree of vertex `v` (1-based). Panics when `v` is outside `[1, n]`.
    pub fn degree(&self, v: usize) -> u64 {
        self.degrees[v - 1]
    }

    /// Degrees indexed by `v - 1`.
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// `δ(H)`; zero for `n = 0`.
    pub fn min_degree(&self) -> u64 {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    /// `Δ(H)`; zero for `n = 0`.
    pub fn max_degree(&self) -> u64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Number of `r`-subsets of `[n]`.
    pub fn possible_edges(&self) -> ExactInt {
        crate::setcore::binom_u(self.n, self.r).expect("n <= 128 keeps C(n, r) in range")
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() as u128 == self.possible_edges()
    }

    /// `deg(S)`: the sum of vertex degrees over `S`.
    pub fn set_degree(&self, set: VertexSet) -> Result<ExactInt> {
        if !set.is_subset(self.vertices()) {
            let vertex = set.difference(self.vertices()).min_vertex().unwrap_or(0);
            return Err(Error::VertexOutOfRange { vertex, n: self.n });
        }
        Ok(self.degree_sum(set))
    }

    #[inline]
    pub(crate) fn degree_sum(&self, set: VertexSet) -> ExactInt {
        set.iter().map(|v| self.degrees[v - 1] as u128).sum()
    }

    /// `σ_r(H)`: the minimum of `deg(S)` over non-edge `r`-sets `S`.
    ///
    /// Walks the `r`-subsets in bitmask order and skips edges with a merged
    /// scan against the sorted edge list; ties go to the first minimiser.
    pub fn ore_degree(&self) -> OreResult {
        let mut best: Option<(ExactInt, VertexSet)> = None;
        let mut edge_iter = self.edges.iter().peekable();
        let subsets = enumerate_subsets(self.n, self.r).expect("universe validated at build");
        for s in subsets {
            while let Some(&&e) = edge_iter.peek() {
                if e < s {
                    edge_iter.next();
                } else {
                    break;
                }
            }
            if edge_iter.peek().is_some_and(|&&e| e == s) {
                edge_iter.next();
                continue;
            }
            let d = self.degree_sum(s);
            match best {
                Some((b, _)) if b <= d => {}
                _ => {
                    best = Some((d, s));
                    if d == 0 {
                        break;
                    }
                }
            }
        }
        match best {
            Some((value, witness)) => OreResult {
                value: OreDegree::Finite(value),
                witness: Some(witness),
            },
            None => OreResult {
                value: OreDegree::Unbounded,
                witness: None,
            },
        }
    }

    /// Link hypergraph `H(x) = { E \ {x} : x ∈ E ∈ H }`, on the same `[n]`.
    pub fn link(&self, x: usize) -> Result<Hypergraph> {
        if self.r == 0 {
            return Err(Error::invalid("link of a 0-uniform hypergraph"));
        }
        if x == 0 || x > self.n {
            return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
        }
        let xs = VertexSet::singleton(x);
        // clearing the same bit in every mask preserves their relative order
        let edges: Vec<VertexSet> = self
            .edges
            .iter()
            .filter(|e| e.meets(xs))
            .map(|e| e.difference(xs))
            .collect();
        Ok(Self::from_canonical(self.n, self.r - 1, edges))
    }

    /// First disjoint pair of edges in canonical (index) order, if any.
    pub fn disjoint_pair(&self) -> Option<(VertexSet, VertexSet)> {
        for (i, &a) in self.edges.iter().enumerate() {
            for &b in &self.edges[i + 1..] {
                if a.is_disjoint(b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_intersecting(&self) -> bool {
        self.disjoint_pair().is_none()
    }

    /// Number of unordered edge pairs meeting in fewer than `t` vertices.
    pub fn pairs_below_intersection(&self, t: usize) -> u64 {
        let mut count = 0;
        for (i, &a) in self.edges.iter().enumerate() {
            for &b in &self.edges[i + 1..] {
                if a.intersection(b).len() < t {
                    count += 1;
                }
            }
        }
        count
    }

    /// Minimum `|E ∩ E'|` over distinct edges.
    pub fn min_pairwise_intersection(&self) -> Result<usize> {
        if self.edges.len() < 2 {
            return Err(Error::TooFewEdges {
                found: self.edges.len(),
                needed: 2,
            });
        }
        let mut best = usize::MAX;
        for (i, &a) in self.edges.iter().enumerate() {
            for &b in &self.edges[i + 1..] {
                best = best.min(a.intersection(b).len());
                if best == 0 {
                    return Ok(0);
                }
            }
        }
        Ok(best)
    }

    /// Intersection of all edges; `[n]` for the empty family.
    pub fn common_intersection(&self) -> VertexSet {
        self.edges.iter().fold(self.vertices(), |acc, &e| acc.intersection(e))
    }

    /// Smallest vertex lying in every edge.
    pub fn trivial_star_center(&self) -> Result<Option<usize>> {
        if self.edges.is_empty() {
            return Err(Error::TooFewEdges { found: 0, needed: 1 });
        }
        Ok(self.common_intersection().min_vertex())
    }

    /// Some `(x, S)` with `S` an edge, `x ∉ S`, and every other edge containing
    /// `x` and meeting `S`: a witness that `H` sits inside the Hilton–Milner
    /// family with center `x` and base edge `S`. Canonical order: first `S`,
    /// then smallest `x`.
    pub fn hm_subfamily_witness(&self) -> Option<(usize, VertexSet)> {
        let m = self.edges.len();
        if m == 0 {
            return None;
        }
        // prefix/suffix AND folds give "intersection of all other edges" in O(m)
        let full = self.vertices();
        let mut prefix = Vec::with_capacity(m + 1);
        prefix.push(full);
        for &e in &self.edges {
            let last = *prefix.last().unwrap();
            prefix.push(last.intersection(e));
        }
        let mut suffix = vec![full; m + 1];
        for i in (0..m).rev() {
            suffix[i] = suffix[i + 1].intersection(self.edges[i]);
        }
        for (i, &s) in self.edges.iter().enumerate() {
            let others = prefix[i].intersection(suffix[i + 1]);
            let Some(x) = others.difference(s).min_vertex() else {
                continue;
            };
            let all_meet = self.edges.iter().enumerate().all(|(j, &e)| j == i || e.meets(s));
            if all_meet {
                return Some((x, s));
            }
        }
        None
    }

    /// The common degree when every vertex of `[n]` has the same degree.
    pub fn regular_degree(&self) -> Option<u64> {
        let first = *self.degrees.first()?;
        self.degrees.iter().all(|&d| d == first).then_some(first)
    }
}

fn check_universe(n: usize, r: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    if r > n {
        return Err(Error::invalid(format!("uniformity {r} exceeds n = {n}")));
    }
    Ok(())
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edges", &self.edges)
            .finish()
    }
}

/// First disjoint `(A-edge, B-edge)` pair in canonical order.
pub fn cross_disjoint_pair(a: &Hypergraph, b: &Hypergraph) -> Result<Option<(VertexSet, VertexSet)>> {
    if a.n != b.n {
        return Err(Error::UniverseMismatch { left: a.n, right: b.n });
    }
    for &ea in &a.edges {
        for &eb in &b.edges {
            if ea.is_disjoint(eb) {
                return Ok(Some((ea, eb)));
            }
        }
    }
    Ok(None)
}

pub fn is_cross_intersecting(a: &Hypergraph, b: &Hypergraph) -> Result<bool> {
    Ok(cross_disjoint_pair(a, b)?.is_none())
}

/// Incident edges `i < j` sharing a color, with `j` as small as possible and
/// then `i` as small as possible.
pub fn improper_pair(h: &Hypergraph, colors: &[u32]) -> Result<Option<(usize, usize)>> {
    if colors.len() != h.len() {
        return Err(Error::ColorLengthMismatch {
            found: colors.len(),
            expected: h.len(),
        });
    }
    // (vertex, color) -> earliest edge index carrying it
    let mut first: std::collections::HashMap<(usize, u32), usize> = std::collections::HashMap::new();
    for (j, (&e, &c)) in h.edges.iter().zip(colors).enumerate() {
        let clash = e.iter().filter_map(|v| first.get(&(v, c)).copied()).min();
        if let Some(i) = clash {
            return Ok(Some((i, j)));
        }
        for v in e.iter() {
            first.insert((v, c), j);
        }
    }
    Ok(None)
}

/// Whether incident edges always receive distinct colors.
pub fn validate_proper_coloring(h: &Hypergraph, colors: &[u32]) -> Result<bool> {
    Ok(improper_pair(h, colors)?.is_none())
}

/// A properly edge-colored hypergraph; colors align with the canonical edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredHypergraph {
    base: Hypergraph,
    colors: Vec<u32>,
}

impl ColoredHypergraph {
    pub fn new(base: Hypergraph, colors: Vec<u32>) -> Result<Self> {
        if colors.contains(&0) {
            return Err(Error::invalid("colors must be positive"));
        }
        if let Some((i, j)) = improper_pair(&base, &colors)? {
            return Err(Error::ImproperColoring {
                first: base.edges[i].to_string(),
                second: base.edges[j].to_string(),
                color: colors[i],
            });
        }
        Ok(ColoredHypergraph { base, colors })
    }

    /// Builds from `(edge, color)` pairs in any order; repeated edges must
    /// repeat the same color.
    pub fn from_edges(n: usize, r: usize, edges: &[(VertexSet, u32)]) -> Result<Self> {
        let mut pairs = edges.to_vec();
        pairs.sort_unstable();
        let mut sets = Vec::with_capacity(pairs.len());
        let mut colors = Vec::with_capacity(pairs.len());
        for (set, color) in pairs {
            if sets.last() == Some(&set) {
                if colors.last() != Some(&color) {
                    return Err(Error::invalid(format!("edge {set} listed with two colors")));
                }
                continue;
            }
            sets.push(set);
            colors.push(color);
        }
        let base = Hypergraph::from_sets(n, r, sets)?;
        Self::new(base, colors)
    }

    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color_of(&self, index: usize) -> u32 {
        self.colors[index]
    }

    /// `(edge, color)` in canonical edge order.
    pub fn iter(&self) -> impl Iterator<Item = (VertexSet, u32)> + '_ {
        self.base.edges.iter().copied().zip(self.colors.iter().copied())
    }
}
