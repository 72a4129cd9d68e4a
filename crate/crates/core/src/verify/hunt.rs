//! Seeded simulated annealing over edge-membership vectors.
//!
//! The state is a subset of a fixed candidate list of `r`-sets. Energy is the
//! pair (hypothesis deficit, conclusion margin) compared lexicographically:
//! first reach the hypothesis, then push the conclusion margin below zero.
//! All randomness comes from one `ChaCha8Rng` seeded by the caller, and every
//! evaluation is sequential, so a report depends only on its inputs.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hgf;
use crate::hypergraph::Hypergraph;
use crate::setcore::{binom_u, enumerate_subsets};
use crate::vset::{VertexSet, MAX_VERTICES};

use super::instance_digest;
use super::registry::{assess, transversals, Arity, Entry, Instance, Params, Status};
use super::scan::render_params;

/// Largest candidate list a hunt accepts.
pub const CANDIDATE_CAP: u128 = 100_000;
/// Proposals used to calibrate the initial temperature, per `n`.
pub const WARMUP: u64 = 100;
/// Violations kept in full in the report; the count covers all of them.
pub const VIOLATION_LIMIT: usize = 16;
const COOLING: f64 = 0.999;
const INITIAL_ACCEPTANCE: f64 = 0.8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuntBox {
    pub r: usize,
    pub n_lo: usize,
    pub n_hi: usize,
    pub params: Params,
}

/// Lexicographic objective; smaller is closer to a counterexample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Energy {
    /// `max(0, -hyp_margin)`.
    pub deficit: i128,
    /// Conclusion margin, `i128::MAX` while the hypothesis fails.
    pub slack: i128,
}

impl Energy {
    fn of(hyp_margin: i128, concl_margin: Option<i128>) -> Self {
        Energy {
            deficit: (-hyp_margin).max(0),
            slack: concl_margin.unwrap_or(i128::MAX),
        }
    }

    /// Scalar uphill distance used by the acceptance rule.
    fn delta(self, to: Energy) -> i128 {
        if self.deficit != to.deficit {
            to.deficit - self.deficit
        } else if self.slack == i128::MAX || to.slack == i128::MAX {
            0
        } else {
            to.slack - self.slack
        }
    }

    fn render(self) -> String {
        if self.slack == i128::MAX {
            format!("deficit={} slack=none", self.deficit)
        } else {
            format!("deficit={} slack={}", self.deficit, self.slack)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracePoint {
    pub step: u64,
    pub n: usize,
    pub energy: Energy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuntViolation {
    pub n: usize,
    pub digest: String,
    pub out_of_domain: bool,
    pub hypergraph: Hypergraph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuntReport {
    pub entry: Entry,
    pub hbox: HuntBox,
    pub seed: u64,
    pub budget: u64,
    pub evaluated: u64,
    pub skipped: u64,
    pub confirmed: u64,
    pub vacuous: u64,
    pub out_of_domain: u64,
    /// Distinct violating instances by digest.
    pub violation_count: u64,
    pub trace: Vec<TracePoint>,
    pub best: Option<(Energy, Hypergraph)>,
    pub violations: Vec<HuntViolation>,
}

impl HuntReport {
    pub fn has_violation(&self) -> bool {
        self.violation_count > 0
    }

    /// Stable header, trace, then hgf blocks for the best instance and the
    /// violations.
    pub fn render(&self) -> String {
        let mut out = String::from("hunt-report 1\n");
        let _ = writeln!(out, "entry: {}", self.entry);
        let _ = writeln!(out, "r: {}", self.hbox.r);
        let _ = writeln!(out, "n: {}..{}", self.hbox.n_lo, self.hbox.n_hi);
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "budget: {}", self.budget);
        let _ = writeln!(out, "evaluated: {}", self.evaluated);
        let _ = writeln!(out, "skipped: {}", self.skipped);
        let _ = writeln!(out, "confirmed: {}", self.confirmed);
        let _ = writeln!(out, "vacuous: {}", self.vacuous);
        let _ = writeln!(out, "out_of_domain: {}", self.out_of_domain);
        let _ = writeln!(out, "violations: {}", self.violation_count);
        out.push_str(&render_params(&self.hbox.params));
        out.push_str("trace:\n");
        for p in &self.trace {
            let _ = writeln!(out, "  step={} n={} {}", p.step, p.n, p.energy.render());
        }
        if let Some((e, h)) = &self.best {
            let _ = writeln!(out, "best: n={} {}", h.n(), e.render());
            out.push_str(&hgf::serialize(h));
        }
        for (k, v) in self.violations.iter().enumerate() {
            let dom = if v.out_of_domain { " OUT_OF_DOMAIN" } else { "" };
            let _ = writeln!(out, "violation {}: n={} digest={}{dom}", k + 1, v.n, v.digest);
            out.push_str(&hgf::serialize(&v.hypergraph));
        }
        out
    }

    pub fn render_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "entry={}", self.entry);
        let _ = writeln!(out, "r={}", self.hbox.r);
        let _ = writeln!(out, "n_lo={}", self.hbox.n_lo);
        let _ = writeln!(out, "n_hi={}", self.hbox.n_hi);
        let _ = writeln!(out, "seed={}", self.seed);
        let _ = writeln!(out, "budget={}", self.budget);
        let _ = writeln!(out, "evaluated={}", self.evaluated);
        let _ = writeln!(out, "skipped={}", self.skipped);
        let _ = writeln!(out, "confirmed={}", self.confirmed);
        let _ = writeln!(out, "vacuous={}", self.vacuous);
        let _ = writeln!(out, "out_of_domain={}", self.out_of_domain);
        let _ = writeln!(out, "violations={}", self.violation_count);
        if let Some((e, h)) = &self.best {
            let _ = writeln!(out, "best.n={}", h.n());
            let _ = writeln!(out, "best.deficit={}", e.deficit);
            if e.slack != i128::MAX {
                let _ = writeln!(out, "best.slack={}", e.slack);
            }
            let _ = writeln!(out, "best.digest={}", instance_digest(&Instance::Single(h.clone())));
        }
        for (k, v) in self.violations.iter().enumerate() {
            let _ = writeln!(out, "violation.{}.digest={}", k + 1, v.digest);
            let _ = writeln!(out, "violation.{}.n={}", k + 1, v.n);
        }
        out
    }
}

/// How an added edge is reconciled with the current family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Repair {
    None,
    /// Drop every edge meeting the new one in fewer than `t` vertices.
    Intersecting(usize),
}

fn repair_for(entry: Entry, p: &Params) -> Repair {
    match entry {
        Entry::T1_4
        | Entry::T1_5
        | Entry::P4_1
        | Entry::T2_3
        | Entry::L2_4
        | Entry::T2_5
        | Entry::T2_6
        | Entry::T2_7
        | Entry::T2_8 => Repair::Intersecting(1),
        Entry::T2_9 => Repair::Intersecting(p.t.unwrap_or(1)),
        _ => Repair::None,
    }
}

fn candidate_list(entry: Entry, n: usize, r: usize, p: &Params) -> Result<Vec<VertexSet>> {
    let total = binom_u(n, r)?;
    if total > CANDIDATE_CAP {
        return Err(Error::invalid(format!(
            "C({n},{r}) = {total} candidate edges exceeds the hunt cap {CANDIDATE_CAP}"
        )));
    }
    let all = enumerate_subsets(n, r)?;
    if entry == Entry::T2_8 {
        let (_, ts) = transversals(n, p)?;
        return Ok(all.filter(|e| ts.iter().all(|t| e.meets(*t))).collect());
    }
    Ok(all.collect())
}

struct State<'a> {
    n: usize,
    r: usize,
    cands: &'a [VertexSet],
    member: Vec<bool>,
    repair: Repair,
}

impl State<'_> {
    /// Toggles candidate `k`; additions run the repair.
    fn toggled(&self, k: usize) -> Vec<bool> {
        let mut next = self.member.clone();
        if next[k] {
            next[k] = false;
        } else {
            add_with_repair(&mut next, self.cands, k, self.repair);
        }
        next
    }

    fn hypergraph(&self, member: &[bool]) -> Hypergraph {
        let edges: Vec<VertexSet> = self
            .cands
            .iter()
            .zip(member)
            .filter(|(_, &m)| m)
            .map(|(&e, _)| e)
            .collect();
        // candidates come from Gosper order, which is increasing
        Hypergraph::from_canonical(self.n, self.r, edges)
    }
}

fn add_with_repair(member: &mut [bool], cands: &[VertexSet], k: usize, repair: Repair) {
    member[k] = true;
    if let Repair::Intersecting(t) = repair {
        let e = cands[k];
        for (j, f) in cands.iter().enumerate() {
            if member[j] && j != k && f.intersection(e).len() < t {
                member[j] = false;
            }
        }
    }
}

struct Tally<'a> {
    entry: Entry,
    params: &'a Params,
    report: HuntReport,
    seen: BTreeSet<String>,
    step: u64,
}

impl Tally<'_> {
    /// Evaluates one family; `None` when the registry declines the instance
    /// as too large to decide.
    fn evaluate(&mut self, h: &Hypergraph) -> Result<Option<Energy>> {
        self.step += 1;
        self.report.evaluated += 1;
        let inst = Instance::Single(h.clone());
        let v = match assess(self.entry, &inst, self.params) {
            Ok(v) => v,
            Err(Error::ScanTooLarge { .. }) => {
                self.report.skipped += 1;
                return Ok(None);
            }
            Err(e) => return Err(e),
        };
        if v.out_of_domain {
            self.report.out_of_domain += 1;
        }
        match v.status {
            Status::Confirmed => self.report.confirmed += 1,
            Status::Vacuous => self.report.vacuous += 1,
            Status::Violation => {
                let digest = instance_digest(&inst);
                if self.seen.insert(digest.clone()) {
                    self.report.violation_count += 1;
                    if self.report.violations.len() < VIOLATION_LIMIT {
                        self.report.violations.push(HuntViolation {
                            n: h.n(),
                            digest,
                            out_of_domain: v.out_of_domain,
                            hypergraph: h.clone(),
                        });
                    }
                }
            }
        }
        let energy = Energy::of(v.hyp_margin, v.concl_margin);
        let better = self.report.best.as_ref().is_none_or(|(b, _)| energy < *b);
        if better {
            self.report.best = Some((energy, h.clone()));
            self.report.trace.push(TracePoint {
                step: self.step,
                n: h.n(),
                energy,
            });
        }
        Ok(Some(energy))
    }
}

/// Runs the annealer over every `n` in the box, splitting `budget`
/// evaluations evenly (earlier `n` absorb the remainder).
pub fn hunt(entry: Entry, hbox: &HuntBox, seed: u64, budget: u64) -> Result<HuntReport> {
    if entry.arity() != Arity::Single {
        return Err(Error::Unsupported("hunting needs an entry over one hypergraph"));
    }
    let HuntBox { r, n_lo, n_hi, .. } = *hbox;
    if r == 0 || n_lo > n_hi || n_lo < r || n_hi > MAX_VERTICES {
        return Err(Error::invalid(format!("empty or invalid box r={r}, n={n_lo}..{n_hi}")));
    }
    let cand_lists = (n_lo..=n_hi)
        .map(|n| candidate_list(entry, n, r, &hbox.params))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally {
        entry,
        params: &hbox.params,
        report: HuntReport {
            entry,
            hbox: hbox.clone(),
            seed,
            budget,
            evaluated: 0,
            skipped: 0,
            confirmed: 0,
            vacuous: 0,
            out_of_domain: 0,
            violation_count: 0,
            trace: Vec::new(),
            best: None,
            violations: Vec::new(),
        },
        seen: BTreeSet::new(),
        step: 0,
    };
    let count = cand_lists.len() as u64;
    for (idx, cands) in cand_lists.iter().enumerate() {
        let share = budget / count + u64::from((idx as u64) < budget % count);
        anneal(
            n_lo + idx,
            r,
            cands,
            repair_for(entry, &hbox.params),
            share,
            &mut rng,
            &mut tally,
        )?;
    }
    Ok(tally.report)
}

fn anneal(
    n: usize,
    r: usize,
    cands: &[VertexSet],
    repair: Repair,
    share: u64,
    rng: &mut ChaCha8Rng,
    tally: &mut Tally<'_>,
) -> Result<()> {
    if share == 0 || cands.is_empty() {
        return Ok(());
    }
    let mut state = State {
        n,
        r,
        cands,
        member: vec![false; cands.len()],
        repair,
    };
    for k in 0..cands.len() {
        if rng.gen_bool(0.5) {
            add_with_repair(&mut state.member, cands, k, repair);
        }
    }
    let mut left = share - 1;
    let mut current = tally.evaluate(&state.hypergraph(&state.member))?;

    // calibrate T0 so an average uphill move is accepted with the target rate
    let warm = WARMUP.min(left);
    let (mut uphill_sum, mut uphill_count) = (0f64, 0u64);
    for _ in 0..warm {
        let next = state.toggled(rng.gen_range(0..cands.len()));
        if let (Some(cur), Some(e)) = (current, tally.evaluate(&state.hypergraph(&next))?) {
            let d = cur.delta(e);
            if d > 0 {
                uphill_sum += d as f64;
                uphill_count += 1;
            }
        }
    }
    left -= warm;
    let t0 = if uphill_count == 0 {
        1.0
    } else {
        uphill_sum / uphill_count as f64 / -INITIAL_ACCEPTANCE.ln()
    };

    let mut temp = t0;
    for _ in 0..left {
        let next = state.toggled(rng.gen_range(0..cands.len()));
        let candidate = tally.evaluate(&state.hypergraph(&next))?;
        // the uniform draw is taken on every step so the stream does not
        // depend on which branch runs
        let u: f64 = rng.gen();
        let accept = match (current, candidate) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(cur), Some(e)) => {
                let d = cur.delta(e);
                d <= 0 || u < (-(d as f64) / temp).exp()
            }
        };
        if accept {
            state.member = next;
            current = candidate;
        }
        temp *= COOLING;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boxed(r: usize, n_lo: usize, n_hi: usize, params: Params) -> HuntBox {
        HuntBox { r, n_lo, n_hi, params }
    }

    #[test]
    fn energy_order_is_lexicographic() {
        let a = Energy::of(-2, None);
        let b = Energy::of(0, Some(5));
        let c = Energy::of(3, Some(-1));
        assert!(c < b && b < a);
        assert_eq!(a.delta(b), -2);
        assert_eq!(b.delta(c), -6);
    }

    #[test]
    fn ekr_hunt_finds_nothing_and_is_reproducible() {
        let hb = boxed(3, 8, 8, Params::default());
        let a = hunt(Entry::T1_4, &hb, 1, 3000).unwrap();
        assert_eq!(a.evaluated, 3000);
        assert_eq!(a.violation_count, 0);
        let b = hunt(Entry::T1_4, &hb, 1, 3000).unwrap();
        assert_eq!(a.render(), b.render());
        let c = hunt(Entry::T1_4, &hb, 2, 3000).unwrap();
        assert_eq!(c.violation_count, 0);
    }

    #[test]
    fn finds_out_of_domain_violations() {
        // P4.1 fails for graphs: the triangle has sigma above HM_ORE(4,2)
        let hb = boxed(2, 4, 4, Params::default());
        let rep = hunt(Entry::P4_1, &hb, 5, 2000).unwrap();
        assert!(rep.has_violation());
        assert!(rep.violations.iter().all(|v| v.out_of_domain));
        assert!(rep.render().contains("violation 1:"));
    }

    #[test]
    fn budget_is_split_across_the_box() {
        let p = Params {
            s: Some(2),
            ..Params::default()
        };
        let rep = hunt(Entry::C8_1, &boxed(2, 5, 7, p), 3, 1001).unwrap();
        assert_eq!(rep.evaluated, 1001);
    }

    #[test]
    fn rejects_bad_requests() {
        let p = Params::default();
        assert!(hunt(Entry::T1_9, &boxed(2, 5, 5, p.clone()), 1, 10).is_err());
        assert!(hunt(Entry::T1_4, &boxed(3, 9, 8, p.clone()), 1, 10).is_err());
        assert!(hunt(Entry::T1_4, &boxed(6, 40, 40, p), 1, 10).is_err());
    }

    #[test]
    fn intersecting_repair_keeps_family_intersecting() {
        let cands: Vec<VertexSet> = enumerate_subsets(7, 3).unwrap().collect();
        let mut member = vec![false; cands.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..200 {
            let k = rng.gen_range(0..cands.len());
            add_with_repair(&mut member, &cands, k, Repair::Intersecting(1));
            let kept: Vec<VertexSet> = cands.iter().zip(&member).filter(|(_, &m)| m).map(|(&e, _)| e).collect();
            assert!(kept.iter().all(|a| kept.iter().all(|b| a.meets(*b))));
        }
    }
}
