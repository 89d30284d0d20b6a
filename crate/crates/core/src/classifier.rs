//! Which optimal distance-3 parameters may belong to degenerate codes.
//!
//! The optimal k values for n = 5..=25 are embedded from the published
//! classification rather than recomputed, because the quantum Hamming
//! bound is not tight everywhere (at n = 10 it admits k = 5 while the best
//! code has k = 4). A length is "allowed" (red) when the degenerate-code
//! bound still admits the optimal k, and "excluded" (black) when it proves
//! any such optimal code nondegenerate.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{degenerate_bound_max_k, MaxK};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifierError {
    #[error("no embedded optimal k for n = {n}; the table covers 5..=25")]
    OutsideTable { n: u32 },
    #[error("family index m = {m} too large (supported up to {limit})")]
    FamilyIndexTooLarge { m: u32, limit: u32 },
}

/// Optimal k of a distance-3 stabilizer code, for n = 5..=25.
pub const OPTIMAL_DISTANCE3_K: [(u32, u32); 21] = [
    (5, 1),
    (6, 1),
    (7, 1),
    (8, 3),
    (9, 3),
    (10, 4),
    (11, 5),
    (12, 6),
    (13, 7),
    (14, 8),
    (15, 9),
    (16, 10),
    (17, 11),
    (18, 11),
    (19, 12),
    (20, 13),
    (21, 15),
    (22, 15),
    (23, 16),
    (24, 17),
    (25, 18),
];

pub fn optimal_k(n: u32) -> Option<u32> {
    OPTIMAL_DISTANCE3_K.iter().find(|(len, _)| *len == n).map(|(_, k)| *k)
}

/// True when the degenerate-code bound admits k at length n, i.e. a
/// degenerate code could still encode that many logical qubits.
pub fn degenerate_allowed_with_k(n: u32, k: u32) -> bool {
    degenerate_bound_max_k(n, 1).admits(k)
}

/// True when a degenerate distance-3 code of length n may encode the
/// optimal number of logical qubits.
pub fn degenerate_allowed(n: u32) -> Result<bool, ClassifierError> {
    let k = optimal_k(n).ok_or(ClassifierError::OutsideTable { n })?;
    Ok(degenerate_allowed_with_k(n, k))
}

/// One classified point: the optimal parameters at length n together with
/// the degenerate-bound cap that decides its color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PointClass {
    pub n: u32,
    pub optimal_k: u32,
    pub degenerate_max_k: MaxK,
    pub allowed: bool,
}

pub fn classify_point(n: u32) -> Result<PointClass, ClassifierError> {
    let optimal_k = optimal_k(n).ok_or(ClassifierError::OutsideTable { n })?;
    let degenerate_max_k = degenerate_bound_max_k(n, 1);
    Ok(PointClass { n, optimal_k, degenerate_max_k, allowed: degenerate_max_k.admits(optimal_k) })
}

const FAMILY_INDEX_LIMIT: u32 = 30;

/// The two length families derived from the perfect-code lengths
/// f_m = (4^m - 1) / 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthFamily {
    pub m: u32,
    pub f_m: u64,
    /// 8·f_m + {-1, +1, +2, +3, +4}
    pub near_eight_f: Vec<u64>,
    /// f_{m+2} + {-3, -2, -1, +1, +2}
    pub near_next_f: Vec<u64>,
}

impl LengthFamily {
    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.near_eight_f.iter().chain(&self.near_next_f).copied()
    }
}

fn perfect_length(m: u32) -> u64 {
    (((1u128 << (2 * m)) - 1) / 3) as u64
}

pub fn length_family(m: u32) -> Result<LengthFamily, ClassifierError> {
    if m == 0 || m > FAMILY_INDEX_LIMIT {
        return Err(ClassifierError::FamilyIndexTooLarge { m, limit: FAMILY_INDEX_LIMIT });
    }
    let f_m = perfect_length(m);
    let f_next = perfect_length(m + 2);
    let mut near_eight_f: Vec<u64> =
        [-1i64, 1, 2, 3, 4].iter().map(|o| (8 * f_m as i64 + o) as u64).collect();
    near_eight_f.sort_unstable();
    let mut near_next_f: Vec<u64> =
        [1i64, -1, 2, -2, 3].iter().map(|o| (f_next as i64 - o) as u64).collect();
    near_next_f.sort_unstable();
    Ok(LengthFamily { m, f_m, near_eight_f, near_next_f })
}

/// Union of all family members for m = 1..=m_max.
pub fn corollary_lengths(m_max: u32) -> Result<Vec<u64>, ClassifierError> {
    let mut out: Vec<u64> = Vec::new();
    for m in 1..=m_max {
        out.extend(length_family(m)?.members());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Where the direct bound computation and the family formula disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub m_max: u32,
    pub n_lo: u32,
    pub n_hi: u32,
    /// Lengths both sides classify as allowed.
    pub matches: Vec<u32>,
    /// Allowed by the direct bound comparison but absent from the stated
    /// families, with the deciding caps as evidence.
    pub only_direct: Vec<PointClass>,
    /// Produced by the family formula but excluded by the direct bound.
    pub only_family: Vec<FamilyOnly>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyOnly {
    pub point: PointClass,
    /// Which family expressions generate this length.
    pub sources: Vec<String>,
}

/// Compare the directly computed allowed set against the family formula
/// over `n_range` (within the embedded table).
pub fn cross_check(
    m_max: u32,
    n_range: RangeInclusive<u32>,
) -> Result<CrossCheckReport, ClassifierError> {
    let (n_lo, n_hi) = (*n_range.start(), *n_range.end());
    let mut report = CrossCheckReport {
        m_max,
        n_lo,
        n_hi,
        matches: Vec::new(),
        only_direct: Vec::new(),
        only_family: Vec::new(),
    };
    if n_lo > n_hi {
        return Ok(report);
    }
    let mut sources: BTreeMap<u64, Vec<String>> = BTreeMap::new();
    for m in 1..=m_max {
        let fam = length_family(m)?;
        for v in &fam.near_eight_f {
            let offset = *v as i64 - 8 * fam.f_m as i64;
            sources.entry(*v).or_default().push(format!("8·f({m}){offset:+}"));
        }
        let f_next = perfect_length(m + 2);
        for v in &fam.near_next_f {
            let offset = *v as i64 - f_next as i64;
            sources.entry(*v).or_default().push(format!("f({}){offset:+}", m + 2));
        }
    }
    for n in n_range {
        let point = classify_point(n)?;
        let in_family = sources.contains_key(&u64::from(n));
        match (point.allowed, in_family) {
            (true, true) => report.matches.push(n),
            (true, false) => report.only_direct.push(point),
            (false, true) => report.only_family.push(FamilyOnly {
                point,
                sources: sources[&u64::from(n)].clone(),
            }),
            (false, false) => {}
        }
    }
    Ok(report)
}
