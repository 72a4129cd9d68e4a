//! Exact matching solvers: maximum matching (set packing), rooted matching,
//! rainbow matching over properly colored families, and the arrow check.

use crate::error::{Error, Result};
use crate::hypergraph::{ColoredHypergraph, Hypergraph};
use crate::vset::VertexSet;

/// Pairwise disjoint edges.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Matching {
    pub edges: Vec<VertexSet>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Whether the edges are pairwise disjoint and all belong to `h`.
    pub fn is_valid_in(&self, h: &Hypergraph) -> bool {
        let mut used = VertexSet::EMPTY;
        for &e in &self.edges {
            if !h.contains_edge(e) || used.meets(e) {
                return false;
            }
            used = used.union(e);
        }
        true
    }

    pub fn covered(&self) -> VertexSet {
        self.edges.iter().fold(VertexSet::EMPTY, |a, &e| a.union(e))
    }
}

struct Packer {
    r: usize,
    target: usize,
    stack: Vec<VertexSet>,
    best: Vec<VertexSet>,
}

impl Packer {
    fn greedy_extend(&mut self, avail: &[VertexSet]) {
        let mut used = VertexSet::EMPTY;
        let mut extra = Vec::new();
        for &e in avail {
            if used.is_disjoint(e) {
                used = used.union(e);
                extra.push(e);
            }
        }
        if self.stack.len() + extra.len() > self.best.len() {
            self.best = self.stack.clone();
            self.best.extend(extra);
        }
    }

    /// `avail` holds the edges disjoint from everything on the stack that are
    /// still allowed, in canonical order.
    fn search(&mut self, avail: &[VertexSet]) {
        if self.best.len() >= self.target {
            return;
        }
        self.greedy_extend(avail);
        if self.best.len() >= self.target || avail.is_empty() {
            return;
        }
        let coverable = avail.iter().fold(VertexSet::EMPTY, |a, &e| a.union(e));
        let bound = (coverable.len() / self.r).min(avail.len());
        if self.stack.len() + bound <= self.best.len() {
            return;
        }
        let v = coverable.min_vertex().expect("avail is nonempty");
        for &e in avail.iter().filter(|e| e.contains(v)) {
            let next: Vec<VertexSet> = avail.iter().copied().filter(|f| f.is_disjoint(e)).collect();
            self.stack.push(e);
            self.search(&next);
            self.stack.pop();
            if self.best.len() >= self.target {
                return;
            }
        }
        // v stays uncovered
        let next: Vec<VertexSet> = avail.iter().copied().filter(|f| !f.contains(v)).collect();
        self.search(&next);
    }
}

fn pack(h: &Hypergraph, target: usize) -> Vec<VertexSet> {
    if h.is_empty() || target == 0 {
        return Vec::new();
    }
    let mut packer = Packer {
        r: h.r().max(1),
        target,
        stack: Vec::new(),
        best: Vec::new(),
    };
    packer.search(h.edges());
    packer.best
}

/// `ν(H)` with a witness matching.
///
/// Branch and bound: branch on the lowest-index vertex still coverable by an
/// available edge (each edge through it, then leaving it uncovered), prune
/// with `current + floor(coverable / r) <= best`, and seed every node with a
/// greedy completion.
pub fn max_matching(h: &Hypergraph) -> (usize, Matching) {
    let cap = if h.r() == 0 { h.len().min(1) } else { h.n() / h.r() };
    let edges = pack(h, cap);
    (edges.len(), Matching { edges })
}

/// A matching of size exactly `s`, if `ν(H) >= s`.
pub fn has_matching(h: &Hypergraph, s: usize) -> Option<Matching> {
    if s == 0 {
        return Some(Matching::default());
    }
    let mut edges = pack(h, s);
    if edges.len() < s {
        return None;
    }
    edges.truncate(s);
    Some(Matching { edges })
}

/// Disjoint edges `e_1..e_s` with `roots[i] ∈ e_i`, listed in root order.
///
/// Backtracking that always extends the root with the fewest remaining
/// candidates (ties to the lower index).
pub fn rooted_matching(h: &Hypergraph, roots: &[usize]) -> Result<Option<Matching>> {
    if roots.is_empty() {
        return Err(Error::invalid("rooted matching needs at least one root"));
    }
    let mut root_set = VertexSet::EMPTY;
    for &v in roots {
        if v == 0 || v > h.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: h.n() });
        }
        if root_set.contains(v) {
            return Err(Error::DuplicateRoot(v));
        }
        root_set.insert(v);
    }
    // an edge through two roots can serve neither
    let candidates: Vec<Vec<VertexSet>> = roots
        .iter()
        .map(|&v| {
            let others = root_set.difference(VertexSet::singleton(v));
            h.edges()
                .iter()
                .copied()
                .filter(|e| e.contains(v) && e.is_disjoint(others))
                .collect()
        })
        .collect();
    let mut assigned: Vec<Option<VertexSet>> = vec![None; roots.len()];
    if rooted_search(&candidates, &mut assigned, VertexSet::EMPTY) {
        Ok(Some(Matching {
            edges: assigned.into_iter().map(|e| e.expect("all roots assigned")).collect(),
        }))
    } else {
        Ok(None)
    }
}

fn rooted_search(candidates: &[Vec<VertexSet>], assigned: &mut [Option<VertexSet>], used: VertexSet) -> bool {
    let mut pick: Option<(usize, usize)> = None;
    for (i, cands) in candidates.iter().enumerate() {
        if assigned[i].is_some() {
            continue;
        }
        let live = cands.iter().filter(|e| e.is_disjoint(used)).count();
        if pick.is_none_or(|(_, best)| live < best) {
            pick = Some((i, live));
        }
    }
    let Some((i, live)) = pick else {
        return true;
    };
    if live == 0 {
        return false;
    }
    for &e in candidates[i].iter().filter(|e| e.is_disjoint(used)) {
        assigned[i] = Some(e);
        if rooted_search(candidates, assigned, used.union(e)) {
            return true;
        }
    }
    assigned[i] = None;
    false
}

/// One pick of a rainbow matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RainbowPick {
    pub family: usize,
    pub edge: VertexSet,
    pub color: u32,
}

/// Pairwise disjoint edges of pairwise distinct colors, one per family.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RainbowAssignment {
    pub picks: Vec<RainbowPick>,
}

impl RainbowAssignment {
    pub fn is_valid_for(&self, families: &[ColoredHypergraph]) -> bool {
        if self.picks.len() != families.len() {
            return false;
        }
        let mut used = VertexSet::EMPTY;
        let mut colors = Vec::new();
        for (i, p) in self.picks.iter().enumerate() {
            let fam = &families[i];
            let in_family = fam.iter().any(|(e, c)| e == p.edge && c == p.color);
            if p.family != i || !in_family || used.meets(p.edge) || colors.contains(&p.color) {
                return false;
            }
            used = used.union(p.edge);
            colors.push(p.color);
        }
        true
    }
}

/// An `s`-rainbow matching across `families`, searched in the given family
/// order with a vertex mask and a used-color list.
pub fn rainbow_matching(families: &[ColoredHypergraph]) -> Result<Option<RainbowAssignment>> {
    if let Some(first) = families.first() {
        let n = first.base().n();
        if let Some(other) = families.iter().find(|f| f.base().n() != n) {
            return Err(Error::UniverseMismatch {
                left: n,
                right: other.base().n(),
            });
        }
    }
    let mut picks = Vec::with_capacity(families.len());
    if rainbow_search(families, &mut picks, VertexSet::EMPTY) {
        Ok(Some(RainbowAssignment { picks }))
    } else {
        Ok(None)
    }
}

fn rainbow_search(families: &[ColoredHypergraph], picks: &mut Vec<RainbowPick>, used: VertexSet) -> bool {
    let i = picks.len();
    if i == families.len() {
        return true;
    }
    for (edge, color) in families[i].iter() {
        if edge.meets(used) || picks.iter().any(|p| p.color == color) {
            continue;
        }
        picks.push(RainbowPick { family: i, edge, color });
        if rainbow_search(families, picks, used.union(edge)) {
            return true;
        }
        picks.pop();
    }
    false
}

/// Outcome of [`arrow_check`] for one coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowVerdict {
    pub holds: bool,
    /// `(color, matching)` for the first color class carrying a large enough matching.
    pub witness: Option<(u32, Matching)>,
}

/// Validates a size vector `n_1 >= ... >= n_c >= 1`.
pub(crate) fn check_arrow_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::invalid("arrow sizes must be nonempty"));
    }
    if sizes.contains(&0) {
        return Err(Error::invalid("arrow sizes must be positive"));
    }
    if sizes.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::invalid(format!("arrow sizes {sizes:?} must be non-increasing")));
    }
    Ok(())
}

/// Whether some color class `i` (colors are `1..=c`) contains a matching of
/// size `sizes[i - 1]`.
pub fn arrow_check(h: &Hypergraph, coloring: &[u32], sizes: &[usize]) -> Result<ArrowVerdict> {
    check_arrow_sizes(sizes)?;
    if coloring.len() != h.len() {
        return Err(Error::ColorLengthMismatch {
            found: coloring.len(),
            expected: h.len(),
        });
    }
    let c = sizes.len();
    if let Some(&bad) = coloring.iter().find(|&&col| col == 0 || col as usize > c) {
        return Err(Error::invalid(format!("color {bad} outside [1, {c}]")));
    }
    for (idx, &need) in sizes.iter().enumerate() {
        let color = idx as u32 + 1;
        let class = h
            .edges()
            .iter()
            .zip(coloring)
            .filter(|(_, &col)| col == color)
            .map(|(&e, _)| e);
        let class = Hypergraph::from_canonical(h.n(), h.r(), class.collect());
        if let Some(m) = has_matching(&class, need) {
            return Ok(ArrowVerdict {
                holds: true,
                witness: Some((color, m)),
            });
        }
    }
    Ok(ArrowVerdict {
        holds: false,
        witness: None,
    })
}
