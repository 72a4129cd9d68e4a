//! One entry per statement: a parameter domain, a hypothesis and a
//! conclusion, all decided with exact arithmetic.
//!
//! Margins are signed integers. `hyp_margin >= 0` exactly when the hypothesis
//! holds and `concl_margin >= 0` exactly when the conclusion holds; the
//! magnitude measures how far an instance is from flipping, which is what the
//! hunter descends on. A conjunction takes the minimum margin when every part
//! holds and the sum of the negative parts otherwise.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypergraph::{cross_disjoint_pair, ColoredHypergraph, Hypergraph, OreDegree};
use crate::matching::{arrow_check, check_arrow_sizes, has_matching, max_matching, rainbow_matching, rooted_matching};
use crate::setcore::{binom, binom_u, eval_bound, BoundFormula, ExactInt};
use crate::vset::VertexSet;

use super::instance_digest;
use super::scan::failing_coloring;

macro_rules! entries {
    ($($var:ident => $id:literal, $arity:ident, $conj:literal, $summary:literal;)*) => {
        /// Registry entry identifiers.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Entry { $($var),* }

        impl Entry {
            pub const ALL: &'static [Entry] = &[$(Entry::$var),*];

            pub fn id(self) -> &'static str {
                match self { $(Entry::$var => $id),* }
            }

            pub fn arity(self) -> Arity {
                match self { $(Entry::$var => Arity::$arity),* }
            }

            /// Open statements: a violation is a discovery, never a defect.
            pub fn is_conjecture(self) -> bool {
                match self { $(Entry::$var => $conj),* }
            }

            pub fn summary(self) -> &'static str {
                match self { $(Entry::$var => $summary),* }
            }
        }
    };
}

entries! {
    T1_2 => "T1.2", Single, false, "min degree >= C(n-2,r-2), n >= 2r+1 => full 1-star or two disjoint edges";
    C1_1 => "C1.1", Single, true, "|H| > ERDOS_EDGE, n >= rs-1 => nu >= s";
    T1_3 => "T1.3", Single, false, "|H| > C(n,r)-C(n-s+1,r), n >= (2s-1)r-(s-1) => nu >= s";
    T1_4 => "T1.4", Single, false, "intersecting, r >= 3, n >= 2r+2 => sigma <= EKR_ORE, equality only for a full 1-star";
    T1_5 => "T1.5", Single, false, "non-trivial intersecting, r >= 3, n >= 4r^2 => sigma <= HM_ORE";
    T1_6 => "T1.6", Single, false, "sigma > MATCH_ORE, s >= 2, n >= 3r^2(s-1) => nu >= s";
    T1_7 => "T1.7", Colored, false, "properly colored H_1..H_s, each sigma > MATCH_ORE, r >= 3, n > 3r^2 s => s-rainbow matching";
    T1_8 => "T1.8", Colored, false, "properly colored H_1..H_s, each |H_i| > C(n,r)-C(n-s+1,r), n >= 3r^2 s => s-rainbow matching";
    T1_9 => "T1.9", Pair, false, "cross-intersecting, n >= 4r^2 => sigma(A) sigma(B) <= r^2 C(n-2,r-2)^2";
    T1_9D => "T1.9D", Pair, false, "cross-intersecting, n >= 2r+1 => min deg(A) min deg(B) <= C(n-2,r-2)^2";
    O2_1 => "O2.1", Pair, false, "H' subfamily of H => sigma(H') <= sigma(H)";
    L2_2 => "L2.2", Single, false, "non-complete => r^2 |H| >= n sigma, equality only if regular";
    T2_3 => "T2.3", Single, false, "regular intersecting, n >= r => |H| <= REGULAR_CAP";
    L2_4 => "L2.4", Single, false, "regular intersecting, n >= 2r+1 => common degree != C(n-2,r-2)";
    T2_5 => "T2.5", Single, false, "non-trivial intersecting, r >= 3, n >= 2r => |H| <= HM_SIZE";
    T2_6 => "T2.6", Single, false, "intersecting, max degree <= C(n-1,r-1)-C(n-i-1,r-1), n > 2r => |H| <= MAX_DEGREE_CAP";
    T2_7 => "T2.7", Single, false, "intersecting, inside neither a 1-star nor a Hilton-Milner family, r >= 4, n > 2r => |H| <= THIRD_FAMILY_CAP";
    T2_8 => "T2.8", Single, false, "intersecting, every edge meets T1,T2,T3, r >= 3, l >= 4, n >= rl => |H| <= l^2 C(n-3,r-3)";
    T2_9 => "T2.9", Single, false, "t-intersecting, n >= (t+1)(r-t+1) => |H| <= C(n-t,r-t)";
    L2_10 => "L2.10", Single, false, "deg(v_i) > 2(s-1) C(n-2,r-2) for s roots, n > rs => rooted matching";
    T2_11 => "T2.11", Pair, false, "cross-intersecting with empty common intersection, n >= 2r+1 => |A||B| <= CROSS_NONTRIV_CAP";
    P4_1 => "P4.1", Single, false, "non-trivial intersecting, r >= 3, n >= r^2(r-1) => sigma <= HM_ORE";
    L5_1 => "L5.1", Single, false, "graph, sigma_2 > 2(s-1), n >= 2s => nu >= s";
    Cor5 => "COR5", Single, false, "sigma > MATCH_ORE at N+1, n >= 3r^2 N => every coloring has a monochromatic matching of size n_i in class i";
    C8_1 => "C8.1", Single, true, "sigma > MATCH_ORE, n > rs => nu >= s";
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Entry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Entry::ALL
            .iter()
            .copied()
            .find(|e| e.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownEntry(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    Single,
    Pair,
    Colored,
}

impl Arity {
    fn describe(self) -> &'static str {
        match self {
            Arity::Single => "one hypergraph",
            Arity::Pair => "a pair of hypergraphs",
            Arity::Colored => "a list of properly colored hypergraphs",
        }
    }
}

/// Statement parameters beyond `n` and `r`, which come from the instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub i: Option<usize>,
    pub l: Option<usize>,
    pub roots: Option<Vec<usize>>,
    pub sizes: Option<Vec<usize>>,
    pub transversals: Option<[VertexSet; 3]>,
    /// A fixed edge coloring for the arrow entry, in canonical edge order.
    pub coloring: Option<Vec<u32>>,
}

impl Params {
    fn need(v: Option<usize>, name: &str, entry: Entry) -> Result<usize> {
        v.ok_or_else(|| Error::invalid(format!("{entry} needs parameter {name}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Single(Hypergraph),
    Pair(Hypergraph, Hypergraph),
    Colored(Vec<ColoredHypergraph>),
}

impl Instance {
    pub fn arity(&self) -> Arity {
        match self {
            Instance::Single(_) => Arity::Single,
            Instance::Pair(..) => Arity::Pair,
            Instance::Colored(_) => Arity::Colored,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Confirmed,
    Vacuous,
    Violation,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Confirmed => "CONFIRMED",
            Status::Vacuous => "VACUOUS",
            Status::Violation => "VIOLATION",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of checking one entry on one instance.
///
/// The conclusion is evaluated only when the hypothesis holds, so
/// `conclusion_holds` is `None` exactly for vacuous verdicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub entry: Entry,
    /// Empty when produced by [`assess`].
    pub digest: String,
    pub hypothesis_holds: bool,
    pub conclusion_holds: Option<bool>,
    pub status: Status,
    pub out_of_domain: bool,
    pub hyp_margin: i128,
    pub concl_margin: Option<i128>,
    pub facts: Vec<(&'static str, String)>,
}

impl Verdict {
    /// Line-oriented report block.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "entry: {}", self.entry);
        if !self.digest.is_empty() {
            let _ = writeln!(out, "digest: {}", self.digest);
        }
        let _ = writeln!(
            out,
            "domain: {}",
            if self.out_of_domain { "OUT_OF_DOMAIN" } else { "in" }
        );
        let _ = writeln!(
            out,
            "hypothesis: {} (margin {})",
            if self.hypothesis_holds { "holds" } else { "fails" },
            self.hyp_margin
        );
        match (self.conclusion_holds, self.concl_margin) {
            (Some(c), Some(m)) => {
                let _ = writeln!(out, "conclusion: {} (margin {m})", if c { "holds" } else { "fails" });
            }
            _ => out.push_str("conclusion: not evaluated\n"),
        }
        for (k, v) in &self.facts {
            let _ = writeln!(out, "{k}: {v}");
        }
        let _ = writeln!(out, "status: {}", self.status);
        if self.status == Status::Violation && self.entry.is_conjecture() {
            out.push_str("note: conjecture violated, this is a candidate counterexample\n");
        }
        out
    }

    /// Flat `key=value` form, one datum per line.
    pub fn render_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "entry={}", self.entry);
        let _ = writeln!(out, "digest={}", self.digest);
        let _ = writeln!(out, "out_of_domain={}", self.out_of_domain);
        let _ = writeln!(out, "hypothesis_holds={}", self.hypothesis_holds);
        let _ = writeln!(out, "hyp_margin={}", self.hyp_margin);
        match self.conclusion_holds {
            Some(c) => {
                let _ = writeln!(out, "conclusion_holds={c}");
            }
            None => out.push_str("conclusion_holds=none\n"),
        }
        match self.concl_margin {
            Some(m) => {
                let _ = writeln!(out, "concl_margin={m}");
            }
            None => out.push_str("concl_margin=none\n"),
        }
        for (k, v) in &self.facts {
            let _ = writeln!(out, "fact.{}={v}", k.replace(' ', "_"));
        }
        let _ = writeln!(out, "status={}", self.status);
        out
    }
}

/// Evaluates `entry` on `instance` and attaches the instance digest.
pub fn check(entry: Entry, instance: &Instance, params: &Params) -> Result<Verdict> {
    let mut v = assess(entry, instance, params)?;
    v.digest = instance_digest(instance);
    Ok(v)
}

/// [`check`] without the digest, for tight loops.
pub fn assess(entry: Entry, instance: &Instance, params: &Params) -> Result<Verdict> {
    if instance.arity() != entry.arity() {
        return Err(Error::ArityMismatch {
            entry: entry.id(),
            expected: entry.arity().describe(),
        });
    }
    let mut ev = Eval::default();
    match instance {
        Instance::Single(h) => single(entry, h, params, &mut ev)?,
        Instance::Pair(a, b) => {
            same_universe(a, b)?;
            pair(entry, a, b, &mut ev)?;
        }
        Instance::Colored(fams) => {
            if fams.is_empty() {
                return Err(Error::invalid(format!("{entry} needs at least one family")));
            }
            for f in &fams[1..] {
                same_universe(fams[0].base(), f.base())?;
            }
            colored(entry, fams, &mut ev)?;
        }
    }
    let hypothesis_holds = ev.hyp >= 0;
    let conclusion_holds = ev.concl.map(|m| m >= 0);
    let status = match (hypothesis_holds, conclusion_holds) {
        (false, _) => Status::Vacuous,
        (true, Some(true)) => Status::Confirmed,
        (true, Some(false)) => Status::Violation,
        (true, None) => {
            return Err(Error::SelfCheck(format!(
                "{entry}: conclusion skipped under a true hypothesis"
            )))
        }
    };
    Ok(Verdict {
        entry,
        digest: String::new(),
        hypothesis_holds,
        conclusion_holds,
        status,
        out_of_domain: !ev.in_domain,
        hyp_margin: ev.hyp,
        concl_margin: ev.concl,
        facts: ev.facts,
    })
}

#[derive(Default)]
struct Eval {
    in_domain: bool,
    hyp: i128,
    concl: Option<i128>,
    facts: Vec<(&'static str, String)>,
}

impl Eval {
    fn fact(&mut self, key: &'static str, value: impl fmt::Display) {
        self.facts.push((key, value.to_string()));
    }

    /// Sets the hypothesis margin; returns whether the conclusion must run.
    fn hyp(&mut self, margin: i128) -> bool {
        self.hyp = margin;
        margin >= 0
    }
}

fn same_universe(a: &Hypergraph, b: &Hypergraph) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::UniverseMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    if a.r() != b.r() {
        return Err(Error::invalid(format!("uniformities differ ({} vs {})", a.r(), b.r())));
    }
    Ok(())
}

fn int(x: ExactInt) -> Result<i128> {
    i128::try_from(x).map_err(|_| Error::Overflow("margin exceeds the signed range"))
}

fn bound(f: BoundFormula) -> Result<i128> {
    int(eval_bound(f)?)
}

/// Margin of `value > bound`.
fn gt(value: i128, bound: i128) -> i128 {
    value - bound - 1
}

/// Margin of `value <= bound`.
fn le(value: i128, bound: i128) -> i128 {
    bound - value
}

fn flag(b: bool) -> i128 {
    if b {
        0
    } else {
        -1
    }
}

fn all(parts: &[i128]) -> i128 {
    if parts.iter().all(|&m| m >= 0) {
        parts.iter().copied().min().unwrap_or(0)
    } else {
        parts.iter().filter(|&&m| m < 0).sum()
    }
}

/// `σ` as a signed integer; `Unbounded` becomes `r·C(n-1,r-1) + 1`, which
/// exceeds every attainable `deg(S)`.
fn sigma_value(h: &Hypergraph, sigma: OreDegree) -> Result<i128> {
    match sigma {
        OreDegree::Finite(v) => int(v),
        OreDegree::Unbounded => {
            let top = binom_u(h.n().saturating_sub(1), h.r().saturating_sub(1))?;
            Ok(int(top)? * h.r() as i128 + 1)
        }
    }
}

fn sigma_fact(ev: &mut Eval, key: &'static str, h: &Hypergraph) -> Result<(OreDegree, i128)> {
    let res = h.ore_degree();
    match res.witness {
        Some(w) => ev.fact(key, format!("{} at {w}", res.value)),
        None => ev.fact(key, res.value),
    }
    Ok((res.value, sigma_value(h, res.value)?))
}

fn intersecting_margin(h: &Hypergraph, ev: &mut Eval) -> i128 {
    match h.disjoint_pair() {
        None => 0,
        Some((a, b)) => {
            ev.fact("disjoint pair", format!("{a} {b}"));
            -(h.pairs_below_intersection(1) as i128)
        }
    }
}

/// `>= 0` iff `H` is nonempty with no vertex common to all edges.
fn nontrivial_margin(h: &Hypergraph, ev: &mut Eval) -> i128 {
    let common = h.common_intersection();
    if h.is_empty() {
        ev.fact("trivial", "empty family");
    } else if let Some(c) = common.min_vertex() {
        ev.fact("trivial", format!("center {c}"));
    }
    -(common.len() as i128)
}

/// `ν - s`, with a maximum matching as witness; the exact `ν` gives the
/// hunter a gradient even when the conclusion holds.
fn matching_margin(h: &Hypergraph, s: usize, ev: &mut Eval) -> i128 {
    let (nu, m) = max_matching(h);
    ev.fact("nu", nu);
    if nu >= s {
        ev.fact("matching", format_sets(&m.edges[..s]));
    }
    nu as i128 - s as i128
}

fn format_sets(sets: &[VertexSet]) -> String {
    sets.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

fn regular_margin(h: &Hypergraph) -> i128 {
    -((h.max_degree() - h.min_degree()) as i128)
}

fn single(entry: Entry, h: &Hypergraph, p: &Params, ev: &mut Eval) -> Result<()> {
    let (n, r) = (h.n(), h.r());
    let m = h.len() as i128;
    ev.fact("edges", m);
    match entry {
        Entry::T1_2 => {
            ev.in_domain = r >= 2 && n > 2 * r;
            let thr = int(binom(n as i64 - 2, r as i64 - 2)?)?;
            ev.fact("min degree", h.min_degree());
            ev.fact("threshold", thr);
            if ev.hyp(h.min_degree() as i128 - thr) {
                let full_star = match h.trivial_star_center() {
                    Ok(Some(c)) if h.len() as u128 == binom_u(n - 1, r - 1)? => Some(c),
                    _ => None,
                };
                let disjoint = h.disjoint_pair();
                if let Some(c) = full_star {
                    ev.fact("full star", format!("center {c}"));
                }
                if let Some((a, b)) = disjoint {
                    ev.fact("disjoint pair", format!("{a} {b}"));
                }
                ev.concl = Some(flag(full_star.is_some() || disjoint.is_some()));
            }
        }
        Entry::C1_1 | Entry::T1_3 => {
            let s = Params::need(p.s, "s", entry)?;
            let (cap, dom) = if entry == Entry::C1_1 {
                (bound(BoundFormula::ErdosEdge { n, r, s })?, n + 1 >= r * s)
            } else {
                (
                    bound(BoundFormula::CoverSize { n, r, s })?,
                    n + s > (2 * s).saturating_sub(1) * r,
                )
            };
            ev.in_domain = s >= 1 && dom;
            ev.fact("size bound", cap);
            if ev.hyp(gt(m, cap)) {
                ev.concl = Some(matching_margin(h, s, ev));
            }
        }
        Entry::T1_4 => {
            ev.in_domain = r >= 3 && n >= 2 * r + 2;
            let hyp = intersecting_margin(h, ev);
            if ev.hyp(hyp) {
                let (_, sigma) = sigma_fact(ev, "sigma", h)?;
                let cap = bound(BoundFormula::EkrOre { n, r })?;
                ev.fact("bound", cap);
                let mut margin = le(sigma, cap);
                if margin == 0 {
                    let center = if h.is_empty() { None } else { h.trivial_star_center()? };
                    let full = center.is_some() && h.len() as u128 == binom_u(n - 1, r - 1)?;
                    match center {
                        Some(c) if full => ev.fact("equality", format!("full 1-star at {c}")),
                        _ => {
                            ev.fact("equality", "attained by a family that is not a full 1-star");
                            margin = -1;
                        }
                    }
                }
                ev.concl = Some(margin);
            }
        }
        Entry::T1_5 | Entry::P4_1 => {
            let small = n >= r * r * r.saturating_sub(1);
            ev.in_domain = r >= 3
                && match entry {
                    Entry::T1_5 => n >= 4 * r * r || (r <= 5 && small),
                    _ => small,
                };
            let hyp = all(&[intersecting_margin(h, ev), nontrivial_margin(h, ev)]);
            if ev.hyp(hyp) {
                let (_, sigma) = sigma_fact(ev, "sigma", h)?;
                let cap = bound(BoundFormula::HmOre { n, r })?;
                ev.fact("bound", cap);
                ev.concl = Some(le(sigma, cap));
            }
        }
        Entry::T1_6 | Entry::C8_1 | Entry::L5_1 => {
            let s = Params::need(p.s, "s", entry)?;
            ev.in_domain = match entry {
                Entry::T1_6 => s >= 2 && n >= 3 * r * r * (s - 1),
                Entry::C8_1 => n > r * s,
                _ => r == 2 && n >= 2 * s,
            } && s >= 1;
            let cap = if entry == Entry::L5_1 {
                2 * (s as i128 - 1)
            } else {
                bound(BoundFormula::MatchOre { n, r, s })?
            };
            let (_, sigma) = sigma_fact(ev, "sigma", h)?;
            ev.fact("bound", cap);
            if ev.hyp(gt(sigma, cap)) {
                ev.concl = Some(matching_margin(h, s, ev));
            }
        }
        Entry::Cor5 => {
            let sizes = p
                .sizes
                .as_deref()
                .ok_or_else(|| Error::invalid("COR5 needs the size vector"))?;
            check_arrow_sizes(sizes)?;
            let big_n: usize = sizes.iter().map(|&x| x - 1).sum();
            ev.in_domain = n >= 3 * r * r * big_n;
            let cap = bound(BoundFormula::MatchOre { n, r, s: big_n + 1 })?;
            let (_, sigma) = sigma_fact(ev, "sigma", h)?;
            ev.fact("N", big_n);
            ev.fact("bound", cap);
            if ev.hyp(gt(sigma, cap)) {
                let holds = match &p.coloring {
                    Some(col) => {
                        let v = arrow_check(h, col, sizes)?;
                        match &v.witness {
                            Some((c, mt)) => ev.fact("monochromatic", format!("color {c}: {}", format_sets(&mt.edges))),
                            None => ev.fact("monochromatic", "none"),
                        }
                        v.holds
                    }
                    None => {
                        if let Some(mt) = has_matching(h, big_n + 1) {
                            ev.fact("certificate", format!("pigeonhole on {}", format_sets(&mt.edges)));
                            true
                        } else {
                            match failing_coloring(h, sizes, 1)? {
                                Some(col) => {
                                    let text: Vec<String> = col.iter().map(|c| c.to_string()).collect();
                                    ev.fact("failing coloring", text.join(","));
                                    false
                                }
                                None => {
                                    ev.fact("certificate", "exhaustive over all colorings");
                                    true
                                }
                            }
                        }
                    }
                };
                ev.concl = Some(flag(holds));
            }
        }
        Entry::L2_2 => {
            ev.in_domain = true;
            if ev.hyp(flag(!h.is_complete())) {
                let (_, sigma) = sigma_fact(ev, "sigma", h)?;
                let lhs = (r * r) as i128 * m;
                let rhs = n as i128 * sigma;
                ev.fact("r^2 |H|", lhs);
                ev.fact("n sigma", rhs);
                let mut margin = lhs - rhs;
                if margin == 0 {
                    match h.regular_degree() {
                        Some(d) => ev.fact("equality", format!("regular of degree {d}")),
                        None => {
                            ev.fact("equality", "attained by a non-regular family");
                            margin = -1;
                        }
                    }
                }
                ev.concl = Some(margin);
            }
        }
        Entry::T2_3 | Entry::L2_4 => {
            ev.in_domain = if entry == Entry::T2_3 {
                n >= r
            } else {
                r >= 2 && n > 2 * r
            };
            let hyp = all(&[intersecting_margin(h, ev), regular_margin(h)]);
            if ev.hyp(hyp) {
                let d = h.regular_degree().expect("regular under the hypothesis") as i128;
                ev.fact("degree", d);
                ev.concl = Some(if entry == Entry::T2_3 {
                    let cap = bound(BoundFormula::RegularCap { n, r })?;
                    ev.fact("bound", cap);
                    le(m, cap)
                } else {
                    let forbidden = int(binom(n as i64 - 2, r as i64 - 2)?)?;
                    ev.fact("forbidden degree", forbidden);
                    (d - forbidden).abs() - 1
                });
            }
        }
        Entry::T2_5 => {
            ev.in_domain = r >= 3 && n >= 2 * r;
            let hyp = all(&[intersecting_margin(h, ev), nontrivial_margin(h, ev)]);
            if ev.hyp(hyp) {
                let cap = bound(BoundFormula::HmSize { n, r })?;
                ev.fact("bound", cap);
                ev.concl = Some(le(m, cap));
            }
        }
        Entry::T2_6 => {
            let candidates: Vec<usize> = match p.i {
                Some(i) => vec![i],
                None => (2..=r).collect(),
            };
            ev.in_domain = n > 2 * r && r >= 2 && p.i.is_none_or(|i| (2..=r).contains(&i));
            let delta = h.max_degree() as i128;
            ev.fact("max degree", delta);
            let mut applicable = Vec::new();
            let mut best: Option<i128> = None;
            for &i in &candidates {
                let thr = bound(BoundFormula::MaxDegreeThreshold { n, r, i })?;
                let margin = le(delta, thr);
                best = Some(best.map_or(margin, |b| b.max(margin)));
                if margin >= 0 {
                    applicable.push(i);
                }
            }
            let hyp = all(&[intersecting_margin(h, ev), best.unwrap_or(-1)]);
            if ev.hyp(hyp) {
                let mut margin = i128::MAX;
                for &i in &applicable {
                    let cap = bound(BoundFormula::MaxDegreeCap { n, r, i })?;
                    margin = margin.min(le(m, cap));
                }
                let text: Vec<String> = applicable.iter().map(|i| i.to_string()).collect();
                ev.fact("applicable i", text.join(","));
                ev.concl = Some(margin);
            }
        }
        Entry::T2_7 => {
            // at r = 3 the family of triples meeting a fixed triple twice has
            // 3n-8 edges and beats the cap for every n > 6
            ev.in_domain = r >= 4 && n > 2 * r;
            let hm = h.hm_subfamily_witness();
            if let Some((x, s)) = hm {
                ev.fact("hilton-milner subfamily", format!("center {x}, base edge {s}"));
            }
            let hyp = all(&[intersecting_margin(h, ev), nontrivial_margin(h, ev), flag(hm.is_none())]);
            if ev.hyp(hyp) {
                let cap = bound(BoundFormula::ThirdFamilyCap { n, r })?;
                ev.fact("bound", cap);
                ev.concl = Some(le(m, cap));
            }
        }
        Entry::T2_8 => {
            let (l, ts) = transversals(n, p)?;
            ev.in_domain = r >= 3 && l >= 4 && n >= r * l;
            let missing = h
                .edges()
                .iter()
                .filter(|e| ts.iter().any(|t| e.is_disjoint(*t)))
                .count();
            ev.fact("transversals", format!("{} {} {}", ts[0], ts[1], ts[2]));
            let hyp = all(&[intersecting_margin(h, ev), -(missing as i128)]);
            if ev.hyp(hyp) {
                let cap = bound(BoundFormula::ThreeTransversalCap { n, r, l })?;
                ev.fact("bound", cap);
                ev.concl = Some(le(m, cap));
            }
        }
        Entry::T2_9 => {
            let t = Params::need(p.t, "t", entry)?;
            ev.in_domain = (1..=r).contains(&t) && n >= (t + 1) * (r + 1 - t);
            if ev.hyp(-(h.pairs_below_intersection(t) as i128)) {
                let cap = bound(BoundFormula::WilsonCap { n, r, t })?;
                ev.fact("bound", cap);
                ev.concl = Some(le(m, cap));
            }
        }
        Entry::L2_10 => {
            let roots = match &p.roots {
                Some(rs) => rs.clone(),
                None => top_degree_vertices(h, Params::need(p.s, "s or roots", entry)?),
            };
            let s = roots.len();
            ev.in_domain = s >= 1 && n > r * s;
            let thr = 2 * (s as i128 - 1) * int(binom(n as i64 - 2, r as i64 - 2)?)?;
            let text: Vec<String> = roots.iter().map(|v| v.to_string()).collect();
            ev.fact("roots", text.join(","));
            ev.fact("degree threshold", thr);
            let mut seen = VertexSet::EMPTY;
            for &v in &roots {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if seen.contains(v) {
                    return Err(Error::DuplicateRoot(v));
                }
                seen.insert(v);
            }
            let margins: Vec<i128> = roots.iter().map(|&v| gt(h.degree(v) as i128, thr)).collect();
            if ev.hyp(all(&margins)) {
                let found = rooted_matching(h, &roots)?;
                if let Some(mt) = &found {
                    ev.fact("rooted matching", format_sets(&mt.edges));
                }
                ev.concl = Some(flag(found.is_some()));
            }
        }
        Entry::T1_7 | Entry::T1_8 | Entry::T1_9 | Entry::T1_9D | Entry::O2_1 | Entry::T2_11 => {
            unreachable!("arity checked by the caller")
        }
    }
    Ok(())
}

/// The `s` vertices of largest degree, ties to the smaller vertex.
fn top_degree_vertices(h: &Hypergraph, s: usize) -> Vec<usize> {
    let mut vs: Vec<usize> = (1..=h.n()).collect();
    vs.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    vs.truncate(s);
    vs
}

pub(crate) fn transversals(n: usize, p: &Params) -> Result<(usize, [VertexSet; 3])> {
    if let Some(ts) = p.transversals {
        let l = ts[0].len();
        let disjoint = ts[0].is_disjoint(ts[1]) && ts[0].is_disjoint(ts[2]) && ts[1].is_disjoint(ts[2]);
        if !disjoint || ts.iter().any(|t| t.len() != l) || p.l.is_some_and(|pl| pl != l) {
            return Err(Error::invalid(
                "transversals must be pairwise disjoint sets of equal size l",
            ));
        }
        if ts.iter().any(|t| !t.is_subset(VertexSet::full(n))) {
            return Err(Error::invalid(format!("transversals must lie inside [{n}]")));
        }
        return Ok((l, ts));
    }
    let l =
        p.l.ok_or_else(|| Error::invalid("T2.8 needs l or explicit transversals"))?;
    if l == 0 || 3 * l > n {
        return Err(Error::invalid(format!("three disjoint {l}-sets do not fit in [{n}]")));
    }
    Ok((
        l,
        [
            VertexSet::range(1, l),
            VertexSet::range(l + 1, 2 * l),
            VertexSet::range(2 * l + 1, 3 * l),
        ],
    ))
}

fn cross_margin(a: &Hypergraph, b: &Hypergraph, ev: &mut Eval) -> Result<i128> {
    match cross_disjoint_pair(a, b)? {
        None => Ok(0),
        Some((x, y)) => {
            ev.fact("disjoint pair", format!("{x} {y}"));
            let count = a
                .edges()
                .iter()
                .map(|&e| b.edges().iter().filter(|f| f.is_disjoint(e)).count())
                .sum::<usize>();
            Ok(-(count as i128))
        }
    }
}

fn pair(entry: Entry, a: &Hypergraph, b: &Hypergraph, ev: &mut Eval) -> Result<()> {
    let (n, r) = (a.n(), a.r());
    ev.fact("edges", format!("{} {}", a.len(), b.len()));
    match entry {
        Entry::T1_9 => {
            let (sa, va) = sigma_fact(ev, "sigma A", a)?;
            let (sb, vb) = sigma_fact(ev, "sigma B", b)?;
            let finite = !sa.is_unbounded() && !sb.is_unbounded();
            ev.in_domain = n >= 4 * r * r && finite;
            let hyp = all(&[cross_margin(a, b, ev)?, flag(finite)]);
            if ev.hyp(hyp) {
                let c = int(binom(n as i64 - 2, r as i64 - 2)?)?;
                let cap = (r * r) as i128 * c * c;
                ev.fact("product", va * vb);
                ev.fact("bound", cap);
                ev.concl = Some(le(va * vb, cap));
            }
        }
        Entry::T1_9D => {
            ev.in_domain = n > 2 * r;
            let hyp = cross_margin(a, b, ev)?;
            if ev.hyp(hyp) {
                let c = int(binom(n as i64 - 2, r as i64 - 2)?)?;
                let prod = a.min_degree() as i128 * b.min_degree() as i128;
                ev.fact("product", prod);
                ev.fact("bound", c * c);
                ev.concl = Some(le(prod, c * c));
            }
        }
        Entry::O2_1 => {
            ev.in_domain = true;
            let outside = a.edges().iter().filter(|&&e| !b.contains_edge(e)).count();
            if ev.hyp(-(outside as i128)) {
                let (_, small) = sigma_fact(ev, "sigma sub", a)?;
                let (_, big) = sigma_fact(ev, "sigma", b)?;
                ev.concl = Some(big - small);
            }
        }
        Entry::T2_11 => {
            ev.in_domain = n > 2 * r;
            let common = a
                .edges()
                .iter()
                .chain(b.edges())
                .fold(VertexSet::full(n), |acc, &e| acc.intersection(e));
            if !common.is_empty() {
                ev.fact("common intersection", common);
            }
            let hyp = all(&[cross_margin(a, b, ev)?, -(common.len() as i128)]);
            if ev.hyp(hyp) {
                let cap = bound(BoundFormula::CrossNontrivCap { n, r })?;
                let prod = a.len() as i128 * b.len() as i128;
                ev.fact("product", prod);
                ev.fact("bound", cap);
                ev.concl = Some(le(prod, cap));
            }
        }
        _ => unreachable!("arity checked by the caller"),
    }
    Ok(())
}

fn colored(entry: Entry, fams: &[ColoredHypergraph], ev: &mut Eval) -> Result<()> {
    let (n, r) = (fams[0].base().n(), fams[0].base().r());
    let s = fams.len();
    let mut margins = Vec::with_capacity(s);
    match entry {
        Entry::T1_7 => {
            ev.in_domain = r >= 3 && n > 3 * r * r * s;
            let cap = bound(BoundFormula::MatchOre { n, r, s })?;
            ev.fact("bound", cap);
            for f in fams {
                let (_, sigma) = sigma_fact(ev, "sigma", f.base())?;
                margins.push(gt(sigma, cap));
            }
        }
        Entry::T1_8 => {
            ev.in_domain = n >= 3 * r * r * s;
            let cap = bound(BoundFormula::CoverSize { n, r, s })?;
            ev.fact("bound", cap);
            for f in fams {
                ev.fact("edges", f.base().len());
                margins.push(gt(f.base().len() as i128, cap));
            }
        }
        _ => unreachable!("arity checked by the caller"),
    }
    if ev.hyp(all(&margins)) {
        let found = rainbow_matching(fams)?;
        if let Some(rm) = &found {
            let text: Vec<String> = rm.picks.iter().map(|p| format!("{}:{}", p.edge, p.color)).collect();
            ev.fact("rainbow matching", text.join(" "));
        }
        ev.concl = Some(flag(found.is_some()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cover_family, fano, hilton_milner, one_star, perfect_matching};

    fn single_check(entry: Entry, h: Hypergraph, p: &Params) -> Verdict {
        check(entry, &Instance::Single(h), p).unwrap()
    }

    #[test]
    fn every_statement_resolves_to_one_entry() {
        let expected = [
            "T1.2", "C1.1", "T1.3", "T1.4", "T1.5", "T1.6", "T1.7", "T1.8", "T1.9", "T1.9D", "O2.1", "L2.2", "T2.3",
            "L2.4", "T2.5", "T2.6", "T2.7", "T2.8", "T2.9", "L2.10", "T2.11", "P4.1", "L5.1", "COR5", "C8.1",
        ];
        assert_eq!(Entry::ALL.len(), expected.len());
        for id in expected {
            let hits = Entry::ALL.iter().filter(|e| e.id() == id).count();
            assert_eq!(hits, 1, "{id}");
            assert_eq!(id.parse::<Entry>().unwrap().id(), id);
        }
        assert!("T9.9".parse::<Entry>().is_err());
        let conj: Vec<&str> = Entry::ALL
            .iter()
            .filter(|e| e.is_conjecture())
            .map(|e| e.id())
            .collect();
        assert_eq!(conj, vec!["C1.1", "C8.1"]);
    }

    #[test]
    fn star_confirms_ekr_with_equality() {
        let v = single_check(Entry::T1_4, one_star(10, 3, 1).unwrap(), &Params::default());
        assert_eq!(v.status, Status::Confirmed);
        assert_eq!(v.concl_margin, Some(0));
        assert!(!v.out_of_domain);
        assert_eq!(v.digest.len(), 16);
    }

    #[test]
    fn cover_family_is_vacuous_for_matching_entry() {
        let h = cover_family(12, 3, VertexSet::range(1, 3)).unwrap();
        let p = Params {
            s: Some(4),
            ..Params::default()
        };
        let v = single_check(Entry::T1_6, h, &p);
        assert_eq!(v.status, Status::Vacuous);
        assert_eq!(v.hyp_margin, -1);
        assert_eq!(v.conclusion_holds, None);
    }

    #[test]
    fn lemma_edge_bound_on_extremes() {
        let pm = perfect_matching(4, 2).unwrap();
        let v = single_check(Entry::L2_2, pm, &Params::default());
        assert_eq!(v.status, Status::Confirmed);
        assert_eq!(v.concl_margin, Some(0));
        let complete = Hypergraph::complete(5, 2).unwrap();
        assert_eq!(
            single_check(Entry::L2_2, complete, &Params::default()).status,
            Status::Vacuous
        );
    }

    #[test]
    fn fano_meets_regular_cap() {
        let v = single_check(Entry::T2_3, fano(), &Params::default());
        assert_eq!(v.status, Status::Confirmed);
        assert_eq!(v.concl_margin, Some(0));
    }

    #[test]
    fn hilton_milner_entries() {
        let hm = hilton_milner(12, 3, 1, VertexSet::range(2, 4)).unwrap();
        let v = single_check(Entry::T2_5, hm.clone(), &Params::default());
        assert_eq!((v.status, v.concl_margin), (Status::Confirmed, Some(0)));
        let v = single_check(Entry::T1_5, hm.clone(), &Params::default());
        assert_eq!(v.status, Status::Confirmed);
        assert!(v.out_of_domain);
        let v = single_check(Entry::P4_1, hm.clone(), &Params::default());
        assert!(v.out_of_domain);
        assert_eq!(v.concl_margin, Some(0));
        // r^2(r-1) = 18 is the first in-domain order for r = 3
        let big = hilton_milner(18, 3, 1, VertexSet::range(2, 4)).unwrap();
        let v = single_check(Entry::P4_1, big, &Params::default());
        assert!(!v.out_of_domain);
        assert_eq!((v.status, v.concl_margin), (Status::Confirmed, Some(0)));
        // HM is excluded by the third-family entry
        assert_eq!(
            single_check(Entry::T2_7, hm, &Params::default()).status,
            Status::Vacuous
        );
    }

    #[test]
    fn third_family_cap_fails_at_r3() {
        let t = VertexSet::range(1, 3);
        let sets = crate::setcore::enumerate_subsets(9, 3)
            .unwrap()
            .filter(|e| e.intersection(t).len() >= 2);
        let h = Hypergraph::from_sets(9, 3, sets).unwrap();
        assert_eq!(h.len(), 19);
        let v = single_check(Entry::T2_7, h, &Params::default());
        assert_eq!((v.status, v.concl_margin), (Status::Violation, Some(16 - 19)));
        assert!(v.out_of_domain);
    }

    #[test]
    fn proposition_fails_for_graphs() {
        let triangle = Hypergraph::new(4, 2, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        let v = single_check(Entry::P4_1, triangle, &Params::default());
        assert_eq!(v.status, Status::Violation);
        assert!(v.out_of_domain);
    }

    #[test]
    fn arity_and_parameter_errors() {
        let h = one_star(8, 3, 1).unwrap();
        let pair = Instance::Pair(h.clone(), h.clone());
        assert!(matches!(
            check(Entry::T1_4, &pair, &Params::default()),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(check(Entry::T1_6, &Instance::Single(h.clone()), &Params::default()).is_err());
        let other = one_star(9, 3, 1).unwrap();
        assert!(matches!(
            check(Entry::T1_9, &Instance::Pair(h, other), &Params::default()),
            Err(Error::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn cross_intersecting_star_pair_is_tight() {
        let a = one_star(16, 2, 1).unwrap();
        let v = check(Entry::T1_9, &Instance::Pair(a.clone(), a), &Params::default()).unwrap();
        assert_eq!(v.status, Status::Confirmed);
        assert_eq!(v.concl_margin, Some(0));
        assert!(!v.out_of_domain);
    }

    #[test]
    fn complete_side_is_out_of_domain() {
        let a = Hypergraph::complete(16, 2).unwrap();
        let b = Hypergraph::empty(16, 2).unwrap();
        let v = check(Entry::T1_9, &Instance::Pair(a, b), &Params::default()).unwrap();
        assert!(v.out_of_domain);
        assert_eq!(v.status, Status::Vacuous);
    }

    #[test]
    fn arrow_entry_certificates() {
        let pm = perfect_matching(12, 2).unwrap();
        let p = Params {
            sizes: Some(vec![2, 1]),
            ..Params::default()
        };
        let v = single_check(Entry::Cor5, Hypergraph::complete(12, 2).unwrap(), &p);
        assert_eq!(v.status, Status::Confirmed);
        assert!(v.facts.iter().any(|(k, _)| *k == "certificate"));
        // a perfect matching has sigma 2 > MATCH_ORE(12,2,2) = 2 fails: vacuous
        assert_eq!(single_check(Entry::Cor5, pm, &p).status, Status::Vacuous);
    }

    #[test]
    fn conjecture_violation_renders_note() {
        // two disjoint 3-sets on n = 7 with s = 2 is far from the hypothesis; check rendering only
        let h = perfect_matching(6, 3).unwrap();
        let p = Params {
            s: Some(2),
            ..Params::default()
        };
        let v = single_check(Entry::C8_1, h, &p);
        assert!(v.render().contains("status: VACUOUS"));
        assert!(v.render_kv().contains("status=VACUOUS"));
    }
}
