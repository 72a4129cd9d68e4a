//! Named extremal families.
//!
//! Every generator checks its edge count against the closed form before
//! returning, so a construction that comes back `Ok` has the advertised size.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::setcore::{binom_u, enumerate_subsets, eval_bound, BoundFormula, ExactInt};
use crate::vset::{VertexSet, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstructionKind {
    OneStar,
    HiltonMilner,
    Cover,
    Clique,
    PerfectMatching,
    Fano,
    TStar,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 7] = [
        ConstructionKind::OneStar,
        ConstructionKind::HiltonMilner,
        ConstructionKind::Cover,
        ConstructionKind::Clique,
        ConstructionKind::PerfectMatching,
        ConstructionKind::Fano,
        ConstructionKind::TStar,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionKind::OneStar => "star",
            ConstructionKind::HiltonMilner => "hm",
            ConstructionKind::Cover => "cover",
            ConstructionKind::Clique => "clique",
            ConstructionKind::PerfectMatching => "pm",
            ConstructionKind::Fano => "fano",
            ConstructionKind::TStar => "tstar",
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown construction kind `{s}`")))
    }
}

/// Full parameterisation of a construction. Unset distinguished vertices and
/// sets fall back to the lexicographically first placement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub kind: ConstructionKind,
    pub n: usize,
    pub r: usize,
    /// Center `x` (star, Hilton–Milner).
    pub center: Option<usize>,
    /// Base edge `S` (Hilton–Milner).
    pub base_edge: Option<VertexSet>,
    /// Cover set `T` (cover family).
    pub cover: Option<VertexSet>,
    /// Support `W` (clique family).
    pub support: Option<VertexSet>,
    /// Fixed `t`-set (t-star).
    pub t_set: Option<VertexSet>,
    /// `s` for cover (`|T| = s - 1`) and clique (`|W| = rs - 1`) defaults.
    pub s: Option<usize>,
    /// `t` for the t-star default `{1..t}`.
    pub t: Option<usize>,
}

impl ConstructionSpec {
    pub fn new(kind: ConstructionKind, n: usize, r: usize) -> Self {
        ConstructionSpec {
            kind,
            n,
            r,
            center: None,
            base_edge: None,
            cover: None,
            support: None,
            t_set: None,
            s: None,
            t: None,
        }
    }

    pub fn build(&self) -> Result<Hypergraph> {
        let (n, r) = (self.n, self.r);
        match self.kind {
            ConstructionKind::OneStar => one_star(n, r, self.center.unwrap_or(1)),
            ConstructionKind::HiltonMilner => {
                let x = self.center.unwrap_or(1);
                let base = match self.base_edge {
                    Some(b) => b,
                    None => first_set_avoiding(n, r, x)?,
                };
                hilton_milner(n, r, x, base)
            }
            ConstructionKind::Cover => {
                let t = match (self.cover, self.s) {
                    (Some(t), _) => t,
                    (None, Some(s)) if s >= 2 => VertexSet::range(1, s - 1),
                    _ => return Err(Error::invalid("cover family needs a cover set T or s >= 2")),
                };
                cover_family(n, r, t)
            }
            ConstructionKind::Clique => {
                let w = match (self.support, self.s) {
                    (Some(w), _) => w,
                    (None, Some(s)) if r * s >= 1 => VertexSet::range(1, r * s - 1),
                    (None, _) => VertexSet::full(n),
                };
                clique_family(n, r, w)
            }
            ConstructionKind::PerfectMatching => perfect_matching(n, r),
            ConstructionKind::Fano => Ok(fano()),
            ConstructionKind::TStar => {
                let t_set = match (self.t_set, self.t) {
                    (Some(ts), _) => ts,
                    (None, Some(t)) => VertexSet::range(1, t),
                    (None, None) => return Err(Error::invalid("t-star needs a fixed set or t")),
                };
                t_star(n, r, t_set)
            }
        }
    }
}

fn first_set_avoiding(n: usize, r: usize, x: usize) -> Result<VertexSet> {
    let mut set = VertexSet::EMPTY;
    for v in (1..=n).filter(|&v| v != x).take(r) {
        set.insert(v);
    }
    if set.len() != r {
        return Err(Error::invalid(format!("no {r}-set avoids vertex {x} in [{n}]")));
    }
    Ok(set)
}

fn check_nr(n: usize, r: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    if r == 0 || r > n {
        return Err(Error::invalid(format!("need 1 <= r <= n, got n = {n}, r = {r}")));
    }
    Ok(())
}

fn check_inside(n: usize, set: VertexSet, what: &str) -> Result<()> {
    if !set.is_subset(VertexSet::full(n)) {
        return Err(Error::invalid(format!("{what} {set} is not inside [{n}]")));
    }
    Ok(())
}

fn filtered(n: usize, r: usize, keep: impl Fn(VertexSet) -> bool) -> Result<Hypergraph> {
    let edges: Vec<VertexSet> = enumerate_subsets(n, r)?.filter(|&e| keep(e)).collect();
    Hypergraph::from_sets(n, r, edges)
}

fn self_check(h: Hypergraph, expected: ExactInt, what: &str) -> Result<Hypergraph> {
    if h.len() as u128 != expected {
        return Err(Error::SelfCheck(format!(
            "{what}: generated {} edges, closed form gives {expected}",
            h.len()
        )));
    }
    Ok(h)
}

/// All `r`-sets containing `x`.
pub fn one_star(n: usize, r: usize, x: usize) -> Result<Hypergraph> {
    check_nr(n, r)?;
    if x == 0 || x > n {
        return Err(Error::VertexOutOfRange { vertex: x, n });
    }
    let h = filtered(n, r, |e| e.contains(x))?;
    self_check(h, binom_u(n - 1, r - 1)?, "one_star")
}

/// `{S} ∪ { E : x ∈ E, E ∩ S ≠ ∅ }`.
pub fn hilton_milner(n: usize, r: usize, x: usize, base: VertexSet) -> Result<Hypergraph> {
    check_nr(n, r)?;
    if n < 2 * r {
        return Err(Error::invalid(format!(
            "Hilton–Milner family needs n >= 2r, got n = {n}, r = {r}"
        )));
    }
    if x == 0 || x > n {
        return Err(Error::VertexOutOfRange { vertex: x, n });
    }
    check_inside(n, base, "base edge")?;
    if base.len() != r {
        return Err(Error::invalid(format!("base edge {base} must have {r} vertices")));
    }
    if base.contains(x) {
        return Err(Error::invalid(format!("center {x} lies in base edge {base}")));
    }
    let h = filtered(n, r, |e| e == base || (e.contains(x) && e.meets(base)))?;
    self_check(h, eval_bound(BoundFormula::HmSize { n, r })?, "hilton_milner")
}

/// All `r`-sets meeting `T`.
pub fn cover_family(n: usize, r: usize, cover: VertexSet) -> Result<Hypergraph> {
    check_nr(n, r)?;
    check_inside(n, cover, "cover set")?;
    if cover.is_empty() {
        return Err(Error::invalid("cover set must be nonempty"));
    }
    let h = filtered(n, r, |e| e.meets(cover))?;
    let expected = binom_u(n, r)? - binom_u(n - cover.len(), r)?;
    self_check(h, expected, "cover_family")
}

/// All `r`-subsets of `W`.
pub fn clique_family(n: usize, r: usize, support: VertexSet) -> Result<Hypergraph> {
    check_nr(n, r)?;
    check_inside(n, support, "clique support")?;
    if support.len() < r {
        return Err(Error::invalid(format!(
            "clique support {support} has fewer than {r} vertices"
        )));
    }
    let h = filtered(n, r, |e| e.is_subset(support))?;
    self_check(h, binom_u(support.len(), r)?, "clique_family")
}

/// All `r`-sets containing the fixed set.
pub fn t_star(n: usize, r: usize, t_set: VertexSet) -> Result<Hypergraph> {
    check_nr(n, r)?;
    check_inside(n, t_set, "fixed set")?;
    let t = t_set.len();
    if t > r {
        return Err(Error::invalid(format!("fixed set {t_set} larger than r = {r}")));
    }
    let h = filtered(n, r, |e| t_set.is_subset(e))?;
    self_check(h, binom_u(n - t, r - t)?, "t_star")
}

/// `floor(n / r)` disjoint consecutive blocks `{1..r}, {r+1..2r}, ...`.
pub fn perfect_matching(n: usize, r: usize) -> Result<Hypergraph> {
    check_nr(n, r)?;
    let blocks = (0..n / r).map(|k| VertexSet::range(k * r + 1, (k + 1) * r));
    let h = Hypergraph::from_sets(n, r, blocks)?;
    self_check(h, (n / r) as u128, "perfect_matching")
}

/// The 7-point projective plane.
pub fn fano() -> Hypergraph {
    const LINES: [[usize; 3]; 7] = [
        [1, 2, 3],
        [1, 4, 5],
        [1, 6, 7],
        [2, 4, 6],
        [2, 5, 7],
        [3, 4, 7],
        [3, 5, 6],
    ];
    let sets = LINES
        .iter()
        .map(|l| VertexSet::from_vertices(7, l).expect("lines lie in [7]"));
    Hypergraph::from_sets(7, 3, sets).expect("fixed instance is valid")
}
