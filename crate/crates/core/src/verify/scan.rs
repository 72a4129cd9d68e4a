//! Exhaustive scans over bounded instance spaces.
//!
//! Work is cut into fixed index chunks and run on a pool of `workers`
//! threads; counts are summed and witnesses sorted by instance index, so the
//! report does not depend on the worker count.

use std::fmt::Write as _;
use std::ops::Range;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hgf;
use crate::hypergraph::Hypergraph;
use crate::matching::{arrow_check, check_arrow_sizes};
use crate::setcore::enumerate_subsets;
use crate::vset::VertexSet;

use super::instance_digest;
use super::registry::{assess, Arity, Entry, Instance, Params, Status, Verdict};

/// Largest number of colorings enumerated for the arrow entry.
pub const COLORING_CAP: u128 = 1 << 20;
/// Largest number of edges (summed over both sides for pairs) of a base family.
pub const SUBFAMILY_EDGE_CAP: usize = 22;
/// Largest vertex count for the all-graphs scan.
pub const GRAPH_VERTEX_CAP: usize = 7;
/// Witness blocks kept in a report.
pub const WITNESS_LIMIT: usize = 16;

const CHUNK: u64 = 1 << 12;

/// An enumerable instance space.
#[derive(Clone, Debug)]
pub enum ScanSpace {
    /// Every graph on `n` vertices for `n` in the range, with `s` fixed or
    /// ranging over `1..=n/2`.
    Graphs { n: Range<usize>, s: Option<usize> },
    /// Every subfamily of `base`; pair entries take every pair of subfamilies.
    Subfamilies { base: Hypergraph },
    /// Every coloring of `h` with the classes of the size vector.
    Colorings { h: Hypergraph },
}

impl ScanSpace {
    fn describe(&self) -> String {
        match self {
            ScanSpace::Graphs { n, s } => match s {
                Some(s) => format!("graphs n={}..{} s={s}", n.start, n.end - 1),
                None => format!("graphs n={}..{} s=all", n.start, n.end - 1),
            },
            ScanSpace::Subfamilies { base } => {
                format!("subfamilies of n={} r={} m={} base", base.n(), base.r(), base.len())
            }
            ScanSpace::Colorings { h } => format!("colorings of n={} r={} m={}", h.n(), h.r(), h.len()),
        }
    }
}

/// One violating instance.
#[derive(Clone, Debug)]
pub struct ScanWitness {
    pub instance: Instance,
    pub params: Params,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub entry: Entry,
    pub space: String,
    pub workers: usize,
    pub instances: u64,
    pub confirmed: u64,
    pub vacuous: u64,
    pub violations: u64,
    pub out_of_domain: u64,
    /// At most [`WITNESS_LIMIT`] violations, lowest instance index first.
    pub witnesses: Vec<ScanWitness>,
}

impl ScanReport {
    /// Text form; the worker count is deliberately not part of it.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scan-report 1");
        let _ = writeln!(out, "entry: {}", self.entry);
        let _ = writeln!(out, "space: {}", self.space);
        let _ = writeln!(out, "instances: {}", self.instances);
        let _ = writeln!(
            out,
            "status: confirmed={} vacuous={} violation={}",
            self.confirmed, self.vacuous, self.violations
        );
        let _ = writeln!(out, "out-of-domain: {}", self.out_of_domain);
        for (k, w) in self.witnesses.iter().enumerate() {
            let _ = writeln!(out, "--- violation {} digest {}", k + 1, w.verdict.digest);
            out.push_str(&render_params(&w.params));
            out.push_str(&render_instance(&w.instance, w.params.coloring.as_deref()));
        }
        out
    }

    pub fn render_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "entry={}", self.entry);
        let _ = writeln!(out, "space={}", self.space);
        let _ = writeln!(out, "instances={}", self.instances);
        let _ = writeln!(out, "confirmed={}", self.confirmed);
        let _ = writeln!(out, "vacuous={}", self.vacuous);
        let _ = writeln!(out, "violation={}", self.violations);
        let _ = writeln!(out, "out_of_domain={}", self.out_of_domain);
        for (k, w) in self.witnesses.iter().enumerate() {
            let _ = writeln!(out, "witness.{}.digest={}", k + 1, w.verdict.digest);
        }
        out
    }
}

pub(crate) fn render_params(p: &Params) -> String {
    let mut out = String::new();
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    if let Some(s) = p.s {
        let _ = writeln!(out, "# s={s}");
    }
    if let Some(t) = p.t {
        let _ = writeln!(out, "# t={t}");
    }
    if let Some(i) = p.i {
        let _ = writeln!(out, "# i={i}");
    }
    if let Some(l) = p.l {
        let _ = writeln!(out, "# l={l}");
    }
    if let Some(rs) = &p.roots {
        let _ = writeln!(out, "# roots={}", join(rs));
    }
    if let Some(sz) = &p.sizes {
        let _ = writeln!(out, "# sizes={}", join(sz));
    }
    out
}

pub(crate) fn render_instance(inst: &Instance, coloring: Option<&[u32]>) -> String {
    match inst {
        Instance::Single(h) => match coloring {
            Some(c) => hgf::serialize_colored(h, c).unwrap_or_else(|_| hgf::serialize(h)),
            None => hgf::serialize(h),
        },
        Instance::Pair(a, b) => format!("{}--\n{}", hgf::serialize(a), hgf::serialize(b)),
        Instance::Colored(fams) => fams
            .iter()
            .map(|f| hgf::serialize_colored(f.base(), f.colors()).expect("validated colors"))
            .collect::<Vec<_>>()
            .join("--\n"),
    }
}

#[derive(Default)]
struct Partial {
    instances: u64,
    confirmed: u64,
    vacuous: u64,
    violations: u64,
    out_of_domain: u64,
    witnesses: Vec<(u128, ScanWitness)>,
}

impl Partial {
    fn record(&mut self, key: u128, v: Verdict, instance: impl FnOnce() -> Instance, params: &Params) {
        self.instances += 1;
        if v.out_of_domain {
            self.out_of_domain += 1;
        }
        match v.status {
            Status::Confirmed => self.confirmed += 1,
            Status::Vacuous => self.vacuous += 1,
            Status::Violation => {
                self.violations += 1;
                if self.witnesses.len() < WITNESS_LIMIT {
                    self.witnesses.push((
                        key,
                        ScanWitness {
                            instance: instance(),
                            params: params.clone(),
                            verdict: v,
                        },
                    ));
                }
            }
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.instances += other.instances;
        self.confirmed += other.confirmed;
        self.vacuous += other.vacuous;
        self.violations += other.violations;
        self.out_of_domain += other.out_of_domain;
        self.witnesses.extend(other.witnesses);
        self
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))
}

/// Runs `f` over `[0, total)` in fixed chunks on `workers` threads.
fn run_chunks<F>(total: u64, workers: usize, f: F) -> Result<Partial>
where
    F: Fn(Range<u64>) -> Result<Partial> + Sync,
{
    let chunks: Vec<Range<u64>> = (0..total.div_ceil(CHUNK))
        .map(|c| c * CHUNK..((c + 1) * CHUNK).min(total))
        .collect();
    let parts: Vec<Partial> = pool(workers)?.install(|| chunks.into_par_iter().map(&f).collect::<Result<_>>())?;
    let mut acc = parts.into_iter().fold(Partial::default(), Partial::merge);
    acc.witnesses.sort_by_key(|(k, _)| *k);
    acc.witnesses.truncate(WITNESS_LIMIT);
    Ok(acc)
}

fn subfamily(base: &Hypergraph, mask: u64) -> Hypergraph {
    let edges: Vec<VertexSet> = base
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Hypergraph::from_canonical(base.n(), base.r(), edges)
}

/// Enumerates `space` and checks `entry` on every instance.
pub fn exhaustive_scan(entry: Entry, space: &ScanSpace, params: &Params, workers: usize) -> Result<ScanReport> {
    let part = match space {
        ScanSpace::Graphs { n, s } => {
            if entry != Entry::L5_1 {
                return Err(Error::Unsupported(entry.id()));
            }
            if n.end > GRAPH_VERTEX_CAP + 1 || n.is_empty() {
                return Err(Error::ScanTooLarge {
                    size: 1u128 << (n.end.saturating_sub(1) * n.end.saturating_sub(2) / 2).min(127),
                    cap: 1 << 21,
                });
            }
            let mut acc = Partial::default();
            for nv in n.clone() {
                acc = acc.merge(scan_graphs(nv, *s, workers)?);
            }
            acc
        }
        ScanSpace::Subfamilies { base } => {
            let m = base.len();
            let bits = match entry.arity() {
                Arity::Single => m,
                Arity::Pair => 2 * m,
                Arity::Colored => return Err(Error::Unsupported(entry.id())),
            };
            if bits > SUBFAMILY_EDGE_CAP {
                return Err(Error::ScanTooLarge {
                    size: 1u128 << bits,
                    cap: 1u128 << SUBFAMILY_EDGE_CAP,
                });
            }
            run_chunks(1u64 << bits, workers, |range| {
                let mut part = Partial::default();
                for code in range {
                    let inst = match entry.arity() {
                        Arity::Single => Instance::Single(subfamily(base, code)),
                        _ => Instance::Pair(subfamily(base, code & ((1 << m) - 1)), subfamily(base, code >> m)),
                    };
                    let v = assess(entry, &inst, params)?;
                    part.record(code as u128, v, || inst.clone(), params);
                }
                Ok(part)
            })?
        }
        ScanSpace::Colorings { h } => {
            if entry != Entry::Cor5 {
                return Err(Error::Unsupported(entry.id()));
            }
            scan_colorings(h, params, workers)?
        }
    };
    let mut witnesses: Vec<ScanWitness> = part.witnesses.into_iter().map(|(_, w)| w).collect();
    for w in &mut witnesses {
        w.verdict.digest = instance_digest(&w.instance);
    }
    Ok(ScanReport {
        entry,
        space: space.describe(),
        workers,
        instances: part.instances,
        confirmed: part.confirmed,
        vacuous: part.vacuous,
        violations: part.violations,
        out_of_domain: part.out_of_domain,
        witnesses,
    })
}

fn scan_graphs(n: usize, s: Option<usize>, workers: usize) -> Result<Partial> {
    let pairs: Vec<VertexSet> = enumerate_subsets(n, 2)?.collect();
    let base = Hypergraph::from_canonical(n, 2, pairs);
    let s_values: Vec<usize> = match s {
        Some(s) => vec![s],
        None => (1..=n / 2).collect(),
    };
    let total = 1u64 << base.len();
    let stride = s_values.len().max(1) as u128;
    run_chunks(total, workers, |range| {
        let mut part = Partial::default();
        for mask in range {
            let inst = Instance::Single(subfamily(&base, mask));
            for (k, &sv) in s_values.iter().enumerate() {
                let params = Params {
                    s: Some(sv),
                    ..Params::default()
                };
                let v = assess(Entry::L5_1, &inst, &params)?;
                let key = ((n as u128) << 64) | (mask as u128 * stride + k as u128);
                part.record(key, v, || inst.clone(), &params);
            }
        }
        Ok(part)
    })
}

fn coloring_count(m: usize, c: usize) -> Result<u64> {
    let mut total: u128 = 1;
    for _ in 0..m {
        total = total.saturating_mul(c as u128);
        if total > COLORING_CAP {
            return Err(Error::ScanTooLarge {
                size: (c as u128).saturating_pow(m as u32),
                cap: COLORING_CAP,
            });
        }
    }
    Ok(total as u64)
}

fn decode_coloring(mut code: u64, m: usize, c: usize) -> Vec<u32> {
    let mut out = vec![0u32; m];
    for slot in out.iter_mut() {
        *slot = (code % c as u64) as u32 + 1;
        code /= c as u64;
    }
    out
}

/// The first coloring (in base-`c` counting order over edges) with no class
/// `i` holding a matching of size `sizes[i-1]`, if any.
pub fn failing_coloring(h: &Hypergraph, sizes: &[usize], workers: usize) -> Result<Option<Vec<u32>>> {
    check_arrow_sizes(sizes)?;
    let (m, c) = (h.len(), sizes.len());
    let total = coloring_count(m, c)?;
    let found = pool(workers)?.install(|| {
        (0..total)
            .into_par_iter()
            .map(|code| {
                let col = decode_coloring(code, m, c);
                arrow_check(h, &col, sizes).map(|v| (!v.holds).then_some(col))
            })
            .find_first(|r| !matches!(r, Ok(None)))
    });
    match found {
        None => Ok(None),
        Some(r) => r,
    }
}

fn scan_colorings(h: &Hypergraph, params: &Params, workers: usize) -> Result<Partial> {
    let sizes = params
        .sizes
        .as_deref()
        .ok_or_else(|| Error::invalid("COR5 needs the size vector"))?;
    check_arrow_sizes(sizes)?;
    let (m, c) = (h.len(), sizes.len());
    let total = coloring_count(m, c)?;
    let probe = Params {
        coloring: Some(vec![1; m]),
        ..params.clone()
    };
    let base = assess(Entry::Cor5, &Instance::Single(h.clone()), &probe)?;
    run_chunks(total, workers, |range| {
        let mut part = Partial::default();
        for code in range {
            let col = decode_coloring(code, m, c);
            let mut v = base.clone();
            if v.hypothesis_holds {
                let a = arrow_check(h, &col, sizes)?;
                v.conclusion_holds = Some(a.holds);
                v.concl_margin = Some(if a.holds { 0 } else { -1 });
                v.status = if a.holds { Status::Confirmed } else { Status::Violation };
                v.facts.retain(|(k, _)| *k != "monochromatic");
            }
            let p = Params {
                coloring: Some(col),
                ..params.clone()
            };
            part.record(code as u128, v, || Instance::Single(h.clone()), &p);
        }
        Ok(part)
    })
}
