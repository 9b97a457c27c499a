//! Lower bounds on p-untwisting numbers from the tau and s concordance
//! invariants, and the crossing-count arithmetic of generalized crossing
//! changes.

use crate::error::{Error, Result};

/// Strand half-counts of a sequence of generalized crossing changes; the
/// i-th move twists 2*q_i strands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UntwistSequence(Vec<i64>);

impl UntwistSequence {
    pub fn new(half_counts: Vec<i64>) -> Result<Self> {
        for &q in &half_counts {
            if q < 1 {
                return Err(Error::NonPositive(q));
            }
        }
        Ok(UntwistSequence(half_counts))
    }

    pub fn half_counts(&self) -> &[i64] {
        &self.0
    }
}

/// A full twist on 2q strands decomposes into ordinary crossing changes:
/// q^2 between opposite-oriented strand pairs, q^2 - q between same-oriented
/// pairs, q(2q - 1) in total.
pub fn crossing_decomposition(q: i64) -> Result<(i64, i64, i64)> {
    if q < 1 {
        return Err(Error::NonPositive(q));
    }
    let opposite = q * q;
    let same = q * q - q;
    Ok((opposite, same, opposite + same))
}

/// Slice-genus bound: g_4(K) <= sum of q_i^2 over the sequence.
pub fn g4_upper_bound(seq: &UntwistSequence) -> i64 {
    seq.half_counts().iter().map(|q| q * q).sum()
}

/// tu_q(K) >= ceil(|tau| / q^2). The ceiling is taken because tu_q is an
/// integer.
pub fn tu_lower_bound_tau(tau: i64, q: i64) -> Result<i64> {
    if q < 1 {
        return Err(Error::NonPositive(q));
    }
    let t = tau.unsigned_abs() as i64;
    Ok((t + q * q - 1) / (q * q))
}

/// tu_q(K) >= ceil(|s| / (2 q^2)) for the Rasmussen invariant s (always
/// even).
pub fn tu_lower_bound_s(s: i64, q: i64) -> Result<i64> {
    if q < 1 {
        return Err(Error::NonPositive(q));
    }
    if s % 2 != 0 {
        return Err(Error::OddS(s));
    }
    let t = s.unsigned_abs() as i64;
    let denom = 2 * q * q;
    Ok((t + denom - 1) / denom)
}

/// u(K) <= p(2p - 1) * tu_p(K): each generalized crossing change expands
/// into ordinary ones.
pub fn naive_unknotting_bound(p: i64, tu_p: i64) -> Result<i64> {
    if p < 1 {
        return Err(Error::NonPositive(p));
    }
    if tu_p < 0 {
        return Err(Error::NonPositive(tu_p));
    }
    Ok(p * (2 * p - 1) * tu_p)
}

/// For the (p^3, 1)-cable family with tau = p^3 and a single 2p^3-strand
/// unknotting twist: the p-untwisting number is at least p, so the gap
/// between the p- and p^3-untwisting numbers is at least p - 1.
pub fn cable_gap(p: i64) -> Result<(i64, i64)> {
    if p < 1 {
        return Err(Error::NonPositive(p));
    }
    let tau = p * p * p;
    let lower = tu_lower_bound_tau(tau, p)?;
    debug_assert_eq!(lower, p);
    Ok((lower, lower - 1))
}

/// Per-knot bounds summary consumed by the CLI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub knot: String,
    pub q: i64,
    pub tau_bound: Option<i64>,
    pub s_bound: Option<i64>,
    pub best: i64,
}

/// Bounds at a given q from whichever of tau and s are known. Missing both
/// is an error rather than a silent zero.
pub fn bounds_report(knot: &str, tau: Option<i64>, s: Option<i64>, q: i64) -> Result<BoundsReport> {
    if tau.is_none() && s.is_none() {
        return Err(Error::MissingInvariants);
    }
    let tau_bound = tau.map(|t| tu_lower_bound_tau(t, q)).transpose()?;
    let s_bound = s.map(|v| tu_lower_bound_s(v, q)).transpose()?;
    let best = tau_bound.unwrap_or(0).max(s_bound.unwrap_or(0));
    Ok(BoundsReport {
        knot: knot.to_string(),
        q,
        tau_bound,
        s_bound,
        best,
    })
}
