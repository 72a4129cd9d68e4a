//! Exact integer combinatorics: binomial coefficients, `r`-subset streams and
//! the closed-form bounds that the statement registry compares against.
//!
//! Every quantity is an [`ExactInt`] (an unsigned 128-bit integer) produced by
//! checked arithmetic. Overflow and negative intermediate results surface as
//! [`Error::Overflow`]; nothing wraps.

use crate::error::{Error, Result};
use crate::vset::{VertexSet, MAX_VERTICES};

/// Exact nonnegative integer.
pub type ExactInt = u128;

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `C(a, b)`, with `C(a, b) = 0` whenever `b < 0`, `b > a` or `a < 0`.
pub fn binom(a: i64, b: i64) -> Result<ExactInt> {
    if a < 0 || b < 0 || b > a {
        return Ok(0);
    }
    let k = b.min(a - b) as u128;
    let a = a as u128;
    let mut acc: u128 = 1;
    // acc = C(a - k + i, i) after step i, so each division is exact.
    for i in 1..=k {
        let factor = a - k + i;
        let g = gcd(acc, i);
        let reduced = acc / g;
        let rest = i / g;
        debug_assert_eq!(factor % rest, 0);
        acc = reduced
            .checked_mul(factor / rest)
            .ok_or(Error::Overflow("binomial coefficient"))?;
    }
    Ok(acc)
}

/// `C(a, b)` for indices that are already known to be small and nonnegative.
pub(crate) fn binom_u(a: usize, b: usize) -> Result<ExactInt> {
    binom(a as i64, b as i64)
}

#[inline]
pub(crate) fn add(a: ExactInt, b: ExactInt) -> Result<ExactInt> {
    a.checked_add(b).ok_or(Error::Overflow("addition"))
}

#[inline]
pub(crate) fn sub(a: ExactInt, b: ExactInt) -> Result<ExactInt> {
    a.checked_sub(b).ok_or(Error::Overflow("subtraction below zero"))
}

#[inline]
pub(crate) fn mul(a: ExactInt, b: ExactInt) -> Result<ExactInt> {
    a.checked_mul(b).ok_or(Error::Overflow("multiplication"))
}

/// Streams every `r`-subset of `[n]` in strictly increasing bitmask order.
///
/// Uses Gosper's hack on the 128-bit mask.
#[derive(Clone, Debug)]
pub struct Subsets {
    next: Option<u128>,
    limit_bit: Option<u128>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    #[inline]
    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            match cur.checked_add(low) {
                None => None,
                Some(ripple) => {
                    let nxt = (((ripple ^ cur) >> 2) / low) | ripple;
                    match self.limit_bit {
                        Some(limit) if nxt >= limit => None,
                        _ => Some(nxt),
                    }
                }
            }
        };
        Some(VertexSet::from_bits(cur))
    }
}

/// All `r`-subsets of `[n]`, increasing by bitmask; the stream has length `C(n, r)`.
pub fn enumerate_subsets(n: usize, r: usize) -> Result<Subsets> {
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    if r > n {
        return Err(Error::invalid(format!("subset size {r} exceeds n = {n}")));
    }
    let first = if r == 0 { 0 } else { VertexSet::full(r).bits() };
    Ok(Subsets {
        next: Some(first),
        limit_bit: if n >= 128 { None } else { Some(1u128 << n) },
    })
}

/// Closed-form bounds, each evaluating to a single [`ExactInt`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundFormula {
    /// `r * C(n-2, r-2)`.
    EkrOre { n: usize, r: usize },
    /// `r * (C(n-2, r-2) - C(n-r-2, r-2))`.
    HmOre { n: usize, r: usize },
    /// `r * (C(n-1, r-1) - C(n-s, r-1))`.
    MatchOre { n: usize, r: usize, s: usize },
    /// `max(C(rs-1, r), C(n, r) - C(n-s+1, r))`.
    ErdosEdge { n: usize, r: usize, s: usize },
    /// `C(n-1, r-1) - C(n-r-1, r-1) + 1`.
    HmSize { n: usize, r: usize },
    /// `C(n, r) - C(n-s+1, r)`: r-sets meeting a fixed `(s-1)`-set.
    CoverSize { n: usize, r: usize, s: usize },
    /// `C(rs-1, r)`.
    CliqueSize { r: usize, s: usize },
    /// `floor(C(n, r) / (1 + (n-r)(n-r-1)(n-r-2) / (r(r-1)(r-2))))`.
    RegularCap { n: usize, r: usize },
    /// `C(n-t, r-t)`.
    WilsonCap { n: usize, r: usize, t: usize },
    /// `C(n-1, r-1) - C(n-r-1, r-1) - C(n-r-2, r-2) + 2`.
    ThirdFamilyCap { n: usize, r: usize },
    /// `(C(n-1, r-1) + 1) * (C(n-1, r-1) - C(n-r-1, r-1))`.
    CrossNontrivCap { n: usize, r: usize },
    /// `l^2 * C(n-3, r-3)`.
    ThreeTransversalCap { n: usize, r: usize, l: usize },
    /// `C(n-1, r-1) - C(n-i-1, r-1)`: the maximum-degree threshold.
    MaxDegreeThreshold { n: usize, r: usize, i: usize },
    /// `C(n-1, r-1) - C(n-i-1, r-1) + C(n-i-1, r-i)`.
    MaxDegreeCap { n: usize, r: usize, i: usize },
}

impl BoundFormula {
    pub fn name(&self) -> &'static str {
        match self {
            BoundFormula::EkrOre { .. } => "EKR_ORE",
            BoundFormula::HmOre { .. } => "HM_ORE",
            BoundFormula::MatchOre { .. } => "MATCH_ORE",
            BoundFormula::ErdosEdge { .. } => "ERDOS_EDGE",
            BoundFormula::HmSize { .. } => "HM_SIZE",
            BoundFormula::CoverSize { .. } => "COVER_SIZE",
            BoundFormula::CliqueSize { .. } => "CLIQUE_SIZE",
            BoundFormula::RegularCap { .. } => "REGULAR_CAP",
            BoundFormula::WilsonCap { .. } => "WILSON_CAP",
            BoundFormula::ThirdFamilyCap { .. } => "THIRD_FAMILY_CAP",
            BoundFormula::CrossNontrivCap { .. } => "CROSS_NONTRIV_CAP",
            BoundFormula::ThreeTransversalCap { .. } => "THREE_TRANSVERSAL_CAP",
            BoundFormula::MaxDegreeThreshold { .. } => "MAX_DEGREE_THRESHOLD",
            BoundFormula::MaxDegreeCap { .. } => "MAX_DEGREE_CAP",
        }
    }
}

/// Exact value of a closed-form bound.
pub fn eval_bound(f: BoundFormula) -> Result<ExactInt> {
    let c = |a: usize, b: usize, da: i64, db: i64| binom(a as i64 - da, b as i64 - db);
    match f {
        BoundFormula::EkrOre { n, r } => mul(r as u128, c(n, r, 2, 2)?),
        BoundFormula::HmOre { n, r } => {
            let inner = sub(c(n, r, 2, 2)?, binom(n as i64 - r as i64 - 2, r as i64 - 2)?)?;
            mul(r as u128, inner)
        }
        BoundFormula::MatchOre { n, r, s } => {
            let inner = sub(c(n, r, 1, 1)?, binom(n as i64 - s as i64, r as i64 - 1)?)?;
            mul(r as u128, inner)
        }
        BoundFormula::ErdosEdge { n, r, s } => {
            let clique = eval_bound(BoundFormula::CliqueSize { r, s })?;
            let cover = eval_bound(BoundFormula::CoverSize { n, r, s })?;
            Ok(clique.max(cover))
        }
        BoundFormula::HmSize { n, r } => {
            let a = c(n, r, 1, 1)?;
            let b = binom(n as i64 - r as i64 - 1, r as i64 - 1)?;
            add(sub(a, b)?, 1)
        }
        BoundFormula::CoverSize { n, r, s } => {
            let all = binom_u(n, r)?;
            let missing = binom(n as i64 - s as i64 + 1, r as i64)?;
            sub(all, missing)
        }
        BoundFormula::CliqueSize { r, s } => binom(r as i64 * s as i64 - 1, r as i64),
        BoundFormula::RegularCap { n, r } => regular_cap(n, r),
        BoundFormula::WilsonCap { n, r, t } => binom(n as i64 - t as i64, r as i64 - t as i64),
        BoundFormula::ThirdFamilyCap { n, r } => {
            let a = add(c(n, r, 1, 1)?, 2)?;
            let b = binom(n as i64 - r as i64 - 1, r as i64 - 1)?;
            let d = binom(n as i64 - r as i64 - 2, r as i64 - 2)?;
            sub(sub(a, b)?, d)
        }
        BoundFormula::CrossNontrivCap { n, r } => {
            let a = c(n, r, 1, 1)?;
            let b = binom(n as i64 - r as i64 - 1, r as i64 - 1)?;
            mul(add(a, 1)?, sub(a, b)?)
        }
        BoundFormula::ThreeTransversalCap { n, r, l } => mul(mul(l as u128, l as u128)?, c(n, r, 3, 3)?),
        BoundFormula::MaxDegreeThreshold { n, r, i } => {
            let a = c(n, r, 1, 1)?;
            let b = binom(n as i64 - i as i64 - 1, r as i64 - 1)?;
            sub(a, b)
        }
        BoundFormula::MaxDegreeCap { n, r, i } => {
            let thr = eval_bound(BoundFormula::MaxDegreeThreshold { n, r, i })?;
            add(thr, binom(n as i64 - i as i64 - 1, r as i64 - i as i64)?)
        }
    }
}

/// Regular intersecting cap, evaluated as
/// `floor(C(n,r) * p / (p + q))` with `p = r(r-1)(r-2)` and
/// `q = (n-r)(n-r-1)(n-r-2)`. When `p + q = 0` the ratio is undefined and the
/// trivial cap `C(n, r)` is returned.
fn regular_cap(n: usize, r: usize) -> Result<ExactInt> {
    let total = binom_u(n, r)?;
    let falling3 = |x: i64| -> u128 {
        if x < 2 {
            0
        } else {
            (x * (x - 1) * (x - 2)) as u128
        }
    };
    let p = falling3(r as i64);
    let q = falling3(n as i64 - r as i64);
    let denom = add(p, q)?;
    if denom == 0 {
        return Ok(total);
    }
    Ok(mul(total, p)? / denom)
}

/// Whether `c*C(a-1,b-1) > C(a,b) - C(a-c,b) > c*C(a-c,b-1)` holds, exactly.
pub fn check_sandwich_inequality(a: i64, b: i64, c: i64) -> Result<bool> {
    let c_u = u128::try_from(c).map_err(|_| Error::invalid("c must be nonnegative"))?;
    let upper = mul(c_u, binom(a - 1, b - 1)?)?;
    let middle = sub(binom(a, b)?, binom(a - c, b)?)?;
    let lower = mul(c_u, binom(a - c, b - 1)?)?;
    Ok(upper > middle && middle > lower)
}
