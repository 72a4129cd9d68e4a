//! `oredeg`: generate, analyze, verify and hunt.
//!
//! Exit codes: 0 when nothing was violated, 2 when any VIOLATION was found,
//! 1 on usage, parse or parameter errors.

mod analyze;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use oredeg::constructions::{ConstructionKind, ConstructionSpec};
use oredeg::hgf;
use oredeg::verify::hunt::{hunt, HuntBox};
use oredeg::verify::scan::{exhaustive_scan, ScanSpace};
use oredeg::verify::tightness::tightness_for_entry;
use oredeg::verify::{check, Arity, Entry, Instance, Params, Status};
use oredeg::VertexSet;

#[derive(Parser)]
#[command(name = "oredeg", version, about = "Exact Ore-degree hypergraph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a named construction in hgf format.
    Gen(GenArgs),
    /// Print degrees, Ore-degree, matching number and family predicates.
    Analyze(AnalyzeArgs),
    /// Check a registry entry on files, by tightness, or exhaustively.
    Verify(VerifyArgs),
    /// Seeded annealing search for counterexamples.
    Hunt(HuntArgs),
    /// List registry entries.
    List,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Kv,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: ConstructionKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Center vertex (star, hm).
    #[arg(long)]
    x: Option<usize>,
    /// Base edge of the Hilton-Milner family.
    #[arg(long = "S")]
    base: Option<List>,
    /// Cover set of the cover family.
    #[arg(long = "T")]
    cover: Option<List>,
    /// Support of the clique family.
    #[arg(long = "W")]
    support: Option<List>,
    /// t for the t-star on {1..t}.
    #[arg(long)]
    t: Option<usize>,
    /// Explicit fixed set of the t-star.
    #[arg(long)]
    tset: Option<List>,
    /// s for the default cover (|T| = s-1) and clique (|W| = rs-1).
    #[arg(long)]
    s: Option<usize>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// hgf file, or `-` for standard input.
    #[arg(default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// Statement parameters shared by `verify` and `hunt`.
#[derive(Args, Clone, Default)]
struct ParamArgs {
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    roots: Option<List>,
    #[arg(long)]
    sizes: Option<List>,
    /// Three transversals as `a,b;c,d;e,f`.
    #[arg(long)]
    transversals: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_parser = parse_entry)]
    entry: Entry,
    /// Instance files (`-` for standard input): one per single-hypergraph
    /// check, two for a pair, one or more colored files for rainbow entries.
    files: Vec<String>,
    #[command(flatten)]
    params: ParamArgs,
    /// Compare the entry's extremal construction with its closed form.
    #[arg(long, conflicts_with = "exhaustive")]
    tightness: bool,
    /// Enumerate every graph (L5.1 with --n), every subfamily of the given
    /// file, or every coloring of it (COR5).
    #[arg(long)]
    exhaustive: bool,
    /// Order for --tightness, or an inclusive range `lo..hi` for graph scans.
    #[arg(long)]
    n: Option<NRange>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct HuntArgs {
    #[arg(value_parser = parse_entry)]
    entry: Entry,
    #[arg(long)]
    r: usize,
    /// Inclusive range `lo..hi`, or a single order.
    #[arg(long)]
    n: NRange,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    #[command(flatten)]
    params: ParamArgs,
    /// Accepted for uniformity; a hunt is sequential for a fixed seed.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Inclusive vertex-count range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct NRange {
    lo: usize,
    hi: usize,
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad order `{t}`"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(NRange { lo, hi })
    }
}

fn parse_kind(s: &str) -> std::result::Result<ConstructionKind, String> {
    s.parse().map_err(|e: oredeg::Error| e.to_string())
}

fn parse_entry(s: &str) -> std::result::Result<Entry, String> {
    s.parse().map_err(|e: oredeg::Error| e.to_string())
}

/// Comma-separated vertex list.
#[derive(Clone, Debug)]
struct List(Vec<usize>);

impl FromStr for List {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        parse_list(s).map(List)
    }
}

fn parse_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad vertex `{t}`")))
        .collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(violation) => ExitCode::from(if violation { 2 } else { 0 }),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Returns whether a violation was found.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen(a) => gen(a).map(|()| false),
        Command::Analyze(a) => {
            let file = read_hgf(&a.input)?;
            emit(&analyze::analyze(&file, matches!(a.format, Format::Kv)))?;
            Ok(false)
        }
        Command::Verify(a) => verify(a),
        Command::Hunt(a) => run_hunt(a),
        Command::List => {
            let mut out = String::new();
            for e in Entry::ALL {
                let tag = if e.is_conjecture() { " [conjecture]" } else { "" };
                out.push_str(&format!("{:<6} {}{tag}\n", e.id(), e.summary()));
            }
            emit(&out)?;
            Ok(false)
        }
    }
}

fn emit(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn read_text(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn read_hgf(path: &str) -> Result<hgf::HgfFile> {
    let text = read_text(path)?;
    hgf::parse(&text).with_context(|| format!("parsing {path}"))
}

fn set_of(n: usize, v: &Option<List>) -> Result<Option<VertexSet>> {
    v.as_ref()
        .map(|vs| VertexSet::from_vertices(n, &vs.0).map_err(Into::into))
        .transpose()
}

fn gen(a: GenArgs) -> Result<()> {
    let (n, r) = match a.kind {
        ConstructionKind::Fano => (a.n.unwrap_or(7), a.r.unwrap_or(3)),
        _ => (
            a.n.ok_or_else(|| anyhow!("--n is required for {}", a.kind))?,
            a.r.ok_or_else(|| anyhow!("--r is required for {}", a.kind))?,
        ),
    };
    if a.kind == ConstructionKind::Fano && (n, r) != (7, 3) {
        bail!("the Fano plane has n = 7 and r = 3");
    }
    let mut spec = ConstructionSpec::new(a.kind, n, r);
    spec.center = a.x;
    spec.base_edge = set_of(n, &a.base)?;
    spec.cover = set_of(n, &a.cover)?;
    spec.support = set_of(n, &a.support)?;
    spec.t_set = set_of(n, &a.tset)?;
    spec.s = a.s;
    spec.t = a.t;
    let h = spec.build()?;
    emit(&hgf::serialize(&h))
}

fn build_params(p: &ParamArgs, n: usize) -> Result<Params> {
    let transversals = match &p.transversals {
        None => None,
        Some(text) => {
            let parts: Vec<&str> = text.split(';').collect();
            if parts.len() != 3 {
                bail!("--transversals needs three sets separated by `;`");
            }
            let mut ts = [VertexSet::EMPTY; 3];
            for (slot, part) in ts.iter_mut().zip(parts) {
                let vs = parse_list(part).map_err(|e| anyhow!(e))?;
                *slot = VertexSet::from_vertices(n, &vs)?;
            }
            Some(ts)
        }
    };
    Ok(Params {
        s: p.s,
        t: p.t,
        i: p.i,
        l: p.l,
        roots: p.roots.as_ref().map(|l| l.0.clone()),
        sizes: p.sizes.as_ref().map(|l| l.0.clone()),
        transversals,
        coloring: None,
    })
}

fn verify(a: VerifyArgs) -> Result<bool> {
    let kv = matches!(a.format, Format::Kv);
    if a.tightness {
        let n = a.n.ok_or_else(|| anyhow!("--tightness needs --n"))?;
        if n.lo != n.hi {
            bail!("--tightness takes a single order");
        }
        let r = a.r.ok_or_else(|| anyhow!("--tightness needs --r"))?;
        let params = build_params(&a.params, n.lo)?;
        let rep = tightness_for_entry(a.entry, n.lo, r, &params)?;
        emit(&if kv { rep.render_kv() } else { rep.render() })?;
        // a mismatch between a construction and its closed form is a
        // failed sharpness claim, reported like a violation
        return Ok(!rep.all_equal());
    }
    if a.exhaustive {
        let space = match (a.files.as_slice(), a.n) {
            ([], Some(n)) => ScanSpace::Graphs {
                n: n.lo..n.hi + 1,
                s: a.params.s,
            },
            ([file], None) => {
                let h = read_hgf(file)?.hypergraph;
                if a.entry == Entry::Cor5 {
                    ScanSpace::Colorings { h }
                } else {
                    ScanSpace::Subfamilies { base: h }
                }
            }
            _ => bail!("--exhaustive takes either --n (graph scan) or one base file"),
        };
        let n_hint = match &space {
            ScanSpace::Graphs { n, .. } => n.end,
            ScanSpace::Subfamilies { base } => base.n(),
            ScanSpace::Colorings { h } => h.n(),
        };
        let params = build_params(&a.params, n_hint)?;
        let rep = exhaustive_scan(a.entry, &space, &params, a.workers.max(1))?;
        emit(&if kv { rep.render_kv() } else { rep.render() })?;
        return Ok(rep.violations > 0);
    }
    if a.files.is_empty() {
        bail!("verify needs instance files, --tightness or --exhaustive");
    }
    let files = a.files.iter().map(|f| read_hgf(f)).collect::<Result<Vec<_>>>()?;
    let n = files[0].hypergraph.n();
    let mut params = build_params(&a.params, n)?;
    let mut runs: Vec<(Instance, Params)> = Vec::new();
    match a.entry.arity() {
        Arity::Single => {
            for f in files {
                let mut p = params.clone();
                if a.entry == Entry::Cor5 {
                    p.coloring = f.coloring.map(|c| c.colors);
                }
                runs.push((Instance::Single(f.hypergraph), p));
            }
        }
        Arity::Pair => {
            let [fa, fb]: [hgf::HgfFile; 2] = files
                .try_into()
                .map_err(|_| anyhow!("{} needs exactly two files", a.entry))?;
            runs.push((
                Instance::Pair(fa.hypergraph, fb.hypergraph),
                std::mem::take(&mut params),
            ));
        }
        Arity::Colored => {
            let fams = files
                .into_iter()
                .map(|f| f.into_colored())
                .collect::<oredeg::Result<Vec<_>>>()?;
            runs.push((Instance::Colored(fams), std::mem::take(&mut params)));
        }
    }
    let mut violation = false;
    let mut out = String::new();
    for (k, (inst, p)) in runs.iter().enumerate() {
        let v = check(a.entry, inst, p)?;
        violation |= v.status == Status::Violation;
        if k > 0 {
            out.push_str(if kv { "\n" } else { "--\n" });
        }
        out.push_str(&if kv { v.render_kv() } else { v.render() });
    }
    emit(&out)?;
    Ok(violation)
}

fn run_hunt(a: HuntArgs) -> Result<bool> {
    let params = build_params(&a.params, a.n.hi)?;
    let hbox = HuntBox {
        r: a.r,
        n_lo: a.n.lo,
        n_hi: a.n.hi,
        params,
    };
    let rep = hunt(a.entry, &hbox, a.seed, a.budget)?;
    let text = match a.format {
        Format::Kv => rep.render_kv(),
        Format::Text => rep.render(),
    };
    match &a.output {
        Some(path) => fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => emit(&text)?,
    }
    if rep.has_violation() {
        eprintln!(
            "{} violation(s) of {} found{}",
            rep.violation_count,
            a.entry,
            if a.entry.is_conjecture() {
                ": candidate counterexample to a conjecture"
            } else {
                ""
            }
        );
    }
    Ok(rep.has_violation())
}
