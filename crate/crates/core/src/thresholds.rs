//! Threshold constants for the shifted bound family.
//!
//! For each error weight t the (a, t)-bounds are right-and-up shifts of the
//! base quantum Hamming curve. This module finds the first shift index a0
//! whose local maximum sits below the base curve (and certifies that every
//! later shift does too), locates the crossing length n_a of each earlier
//! shift, and assembles the length threshold N(ell, t) past which the
//! (ell, t)-bound dominates all weaker shifts.
//!
//! The "for all a >= a0" tail is certified with a finite argument rather
//! than an asymptotic one: past the directly checked window the sphere
//! count is boxed under the polynomial envelope (t+1)·(6ta)^t / t!, and two
//! certified comparisons show 2^a clears that envelope at the window edge
//! with positive slope in a.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::ComparisonWitness;
use crate::exact::{cmp_pow2, sign_q_minus_r_ln2, sphere_sum, CertifiedSign, ExactError, Sign};

/// Upper limit on the shift-index scan in [`find_stable_shift`].
pub const DEFAULT_SHIFT_CEILING: u32 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThresholdError {
    #[error("error weight t must be at least 1")]
    WeightZero,
    #[error("shift index a must be at least 1")]
    ShiftZero,
    #[error("horizon {horizon} too small: the scan must reach at least {needed} = 2·t·a0")]
    HorizonTooSmall { horizon: u32, needed: u32 },
    #[error("dominance for shift {a} still failing at horizon {horizon}; raise the horizon")]
    NoCrossingBelowHorizon { a: u32, horizon: u32 },
    #[error("stable-shift search hit the ceiling {ceiling} without certifying a tail")]
    ShiftCeilingExceeded { ceiling: u32 },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// True when the (a, t)-bound's local maximum at n = 2ta lies strictly
/// below the base bound there: f_t(2ta) < 2^a.
pub fn local_max_dominated(a: u32, t: u32) -> bool {
    let f = sphere_sum(2 * u64::from(t) * u64::from(a), t);
    cmp_pow2(&f, a.into()) == Ordering::Less
}

/// True when the (a, t)-bound is at or below the base bound at length n:
/// f_t(n) <= 2^a · f_t(n - 2ta) for n >= 2ta, and f_t(n) <= 2^a otherwise.
pub fn dominated_at(a: u32, t: u32, n: u32) -> bool {
    let shift = 2 * u64::from(t) * u64::from(a);
    let f_n = sphere_sum(n.into(), t);
    if u64::from(n) >= shift {
        f_n <= sphere_sum(u64::from(n) - shift, t) << a
    } else {
        cmp_pow2(&f_n, a.into()) != Ordering::Greater
    }
}

/// Finite certificate that every shift index at and beyond the window edge
/// satisfies the local-maximum condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TailCertificate {
    /// Inclusive range of shift indices checked directly.
    pub window: (u32, u32),
    /// Envelope margin at the window edge A: (t+1)·(6tA)^t < t!·2^A,
    /// recorded as the exact integer pair (lhs, rhs).
    pub envelope: ComparisonWitness,
    /// Certified sign of t - A·ln2 (negative means the envelope defect
    /// grows with a, so the margin persists for all larger shifts).
    pub slope: CertifiedSign,
}

/// The first shift index from which the local-maximum condition holds
/// forever, with its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableShift {
    pub a0: u32,
    pub certificate: TailCertificate,
}

/// Smallest a0 such that [`local_max_dominated`] holds for every a >= a0.
///
/// Scans shift indices upward, tracking the last failure; once the
/// polynomial envelope and its slope certify the tail at the current edge,
/// every index between the candidate and the edge has been checked
/// directly and everything beyond is covered analytically.
pub fn find_stable_shift(t: u32) -> Result<StableShift, ThresholdError> {
    find_stable_shift_with_ceiling(t, DEFAULT_SHIFT_CEILING)
}

pub fn find_stable_shift_with_ceiling(t: u32, ceiling: u32) -> Result<StableShift, ThresholdError> {
    if t == 0 {
        return Err(ThresholdError::WeightZero);
    }
    let t_factorial: BigUint = (1..=t).map(BigUint::from).product();
    let mut last_fail = 0u32;
    for a in 1..=ceiling {
        if !local_max_dominated(a, t) {
            last_fail = a;
            continue;
        }
        // Envelope at the edge: (t+1)·(6ta)^t < t!·2^a.
        let envelope_lhs =
            BigUint::from(t + 1) * num_traits::pow(BigUint::from(6 * u64::from(t) * u64::from(a)), t as usize);
        let envelope_rhs = &t_factorial << a;
        if envelope_lhs >= envelope_rhs {
            continue;
        }
        // Slope: the defect a - t·log2(6ta) - log2((t+1)/t!) increases in a
        // exactly when a·ln2 > t.
        let slope = sign_q_minus_r_ln2(
            &BigRational::from_integer(BigInt::from(t)),
            &BigRational::from_integer(BigInt::from(a)),
        )?;
        if slope.sign != Sign::Negative {
            continue;
        }
        return Ok(StableShift {
            a0: last_fail + 1,
            certificate: TailCertificate {
                window: (last_fail + 1, a),
                envelope: ComparisonWitness::of_biguints(&envelope_lhs, &envelope_rhs),
                slope,
            },
        });
    }
    Err(ThresholdError::ShiftCeilingExceeded { ceiling })
}

/// Crossing scan result for one shift index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingPoint {
    pub a: u32,
    /// Smallest n such that dominance holds at every scanned length in
    /// [n_a, horizon].
    pub n_a: u32,
    /// Lengths where dominance flipped from true back to false within the
    /// scan. Flips only occur on the low-n plateau below 2ta; past the
    /// shift's own support the indicator has never been observed to revert.
    pub reversions: Vec<u32>,
}

/// Cached sphere counts f_t(0..=horizon) for one t.
struct SphereTable {
    t: u32,
    f: Vec<BigUint>,
}

impl SphereTable {
    fn new(t: u32, horizon: u32) -> Self {
        let f = (0..=u64::from(horizon)).map(|n| sphere_sum(n, t)).collect();
        SphereTable { t, f }
    }

    fn dominated(&self, a: u32, n: u32) -> bool {
        let shift = 2 * u64::from(self.t) * u64::from(a);
        let f_n = &self.f[n as usize];
        if u64::from(n) >= shift {
            *f_n <= &self.f[(u64::from(n) - shift) as usize] << a
        } else {
            cmp_pow2(f_n, a.into()) != Ordering::Greater
        }
    }
}

/// Smallest n_a with dominance at every scanned length in [n_a, horizon].
pub fn find_crossing(a: u32, t: u32, horizon: u32) -> Result<CrossingPoint, ThresholdError> {
    if t == 0 {
        return Err(ThresholdError::WeightZero);
    }
    if a == 0 {
        return Err(ThresholdError::ShiftZero);
    }
    scan_crossing(a, horizon, &SphereTable::new(t, horizon))
}

fn scan_crossing(a: u32, horizon: u32, table: &SphereTable) -> Result<CrossingPoint, ThresholdError> {
    let mut last_false = 0u32;
    let mut seen_true = false;
    let mut reversions = Vec::new();
    for n in 1..=horizon {
        if table.dominated(a, n) {
            seen_true = true;
        } else {
            if seen_true {
                reversions.push(n);
                seen_true = false;
            }
            last_false = n;
        }
    }
    if last_false == horizon {
        return Err(ThresholdError::NoCrossingBelowHorizon { a, horizon });
    }
    Ok(CrossingPoint { a, n_a: last_false + 1, reversions })
}

/// Everything the constructive threshold argument produces for one t.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    pub t: u32,
    pub a0: u32,
    /// Crossings for a = 1 .. a0-1.
    pub crossing_points: Vec<CrossingPoint>,
    /// N(0, t) = max of all n_a and 2t·a0.
    pub n0: u32,
    /// Whether n0 equals 2t·a0 exactly (every crossing settles no later
    /// than the first stable shift's own peak).
    pub conjecture_holds: bool,
    pub tail_certificate: TailCertificate,
    pub scan_horizon: u32,
}

impl ThresholdReport {
    /// N(ell, t) = N(0, t) + 2t·ell.
    pub fn n_ell(&self, ell: u32) -> u32 {
        self.n0 + 2 * self.t * ell
    }
}

/// Default crossing-scan horizon: generous relative to where every known
/// crossing settles, and overridable so failures are actionable.
pub fn default_horizon(t: u32, a0: u32) -> u32 {
    (8 * t * a0).max(500)
}

/// Run the full constructive computation for one t.
pub fn threshold_report(t: u32, horizon: Option<u32>) -> Result<ThresholdReport, ThresholdError> {
    let stable = find_stable_shift(t)?;
    let a0 = stable.a0;
    let peak = 2 * t * a0;
    let horizon = horizon.unwrap_or_else(|| default_horizon(t, a0));
    if horizon < peak {
        return Err(ThresholdError::HorizonTooSmall { horizon, needed: peak });
    }
    let table = SphereTable::new(t, horizon);
    let crossing_points = (1..a0)
        .map(|a| scan_crossing(a, horizon, &table))
        .collect::<Result<Vec<_>, _>>()?;
    let n0 = crossing_points
        .iter()
        .map(|c| c.n_a)
        .chain(std::iter::once(peak))
        .max()
        .expect("peak always present");
    Ok(ThresholdReport {
        t,
        a0,
        crossing_points,
        n0,
        conjecture_holds: n0 == peak,
        tail_certificate: stable.certificate,
        scan_horizon: horizon,
    })
}

/// N(ell, t): the length past which the (ell, t)-bound dominates all
/// weaker shifts. The headline threshold for degenerate codes is ell = 1.
pub fn length_threshold(t: u32, ell: u32, horizon: Option<u32>) -> Result<u32, ThresholdError> {
    Ok(threshold_report(t, horizon)?.n_ell(ell))
}

/// One row of the embedded reference table for t = 1..=7.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReferenceRow {
    pub t: u32,
    /// Minimum length 3d - 4 required for a code of distance d = 2t + 1.
    pub rains_bound: u32,
    /// Published threshold past which degenerate codes obey the plain
    /// quantum Hamming bound.
    pub m_t: u32,
    /// Published N(t) threshold for the degenerate-code bound.
    pub n_t: u32,
}

pub const REFERENCE_TABLE: [ReferenceRow; 7] = [
    ReferenceRow { t: 1, rains_bound: 5, m_t: 5, n_t: 12 },
    ReferenceRow { t: 2, rains_bound: 11, m_t: 9, n_t: 60 },
    ReferenceRow { t: 3, rains_bound: 17, m_t: 14, n_t: 150 },
    ReferenceRow { t: 4, rains_bound: 23, m_t: 20, n_t: 288 },
    ReferenceRow { t: 5, rains_bound: 29, m_t: 25, n_t: 470 },
    ReferenceRow { t: 6, rains_bound: 35, m_t: 30, n_t: 696 },
    ReferenceRow { t: 7, rains_bound: 41, m_t: 35, n_t: 980 },
];

pub fn reference_table() -> &'static [ReferenceRow; 7] {
    &REFERENCE_TABLE
}

/// Reference row for one t, when embedded.
pub fn reference_row(t: u32) -> Option<ReferenceRow> {
    REFERENCE_TABLE.iter().copied().find(|r| r.t == t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_max_examples() {
        assert!(local_max_dominated(5, 1)); // 31 < 32
        assert!(!local_max_dominated(4, 1)); // 25 > 16
        assert!(local_max_dominated(14, 2)); // 14029 < 16384
    }

    #[test]
    fn dominance_examples() {
        assert!(dominated_at(1, 1, 4)); // 13 <= 2·7
        assert!(!dominated_at(1, 1, 3)); // 10 <= 8 fails
        assert!(!dominated_at(1, 1, 2)); // 7 <= 2 fails
    }

    /// Independent scan: recompute dominance with fresh sphere sums and a
    /// naive suffix check, no table, no last-false bookkeeping.
    fn crossing_oracle(a: u32, t: u32, horizon: u32) -> u32 {
        'outer: for n in 1..=horizon {
            for m in n..=horizon {
                if !dominated_at(a, t, m) {
                    continue 'outer;
                }
            }
            return n;
        }
        panic!("no crossing below horizon");
    }

    #[test]
    fn crossings_for_weight_one() {
        let expected = [(1u32, 4u32), (2, 5), (3, 7), (4, 9)];
        for (a, n_a) in expected {
            let c = find_crossing(a, 1, 200).unwrap();
            assert_eq!(c.n_a, n_a, "a={a}");
            assert_eq!(c.n_a, crossing_oracle(a, 1, 200), "oracle a={a}");
        }
        // Reversions only ever appear on the low-n plateau.
        assert_eq!(find_crossing(1, 1, 200).unwrap().reversions, vec![]);
        assert_eq!(find_crossing(2, 1, 200).unwrap().reversions, vec![2]);
        assert_eq!(find_crossing(3, 1, 200).unwrap().reversions, vec![3]);
        assert_eq!(find_crossing(4, 1, 200).unwrap().reversions, vec![6]);
        for a in 1..=4u32 {
            let c = find_crossing(a, 1, 200).unwrap();
            let plateau = 2 * a; // 2ta for t = 1
            assert!(c.reversions.iter().all(|&n| n <= plateau));
        }
    }

    #[test]
    fn crossing_rejects_weight_zero() {
        assert_eq!(find_crossing(3, 0, 100), Err(ThresholdError::WeightZero));
        assert_eq!(find_crossing(0, 1, 100), Err(ThresholdError::ShiftZero));
    }

    #[test]
    fn stable_shift_small_weights() {
        assert_eq!(find_stable_shift(1).unwrap().a0, 5);
        assert_eq!(find_stable_shift(2).unwrap().a0, 14);
        assert_eq!(find_stable_shift(3).unwrap().a0, 24);
    }

    #[test]
    fn stable_shift_certificate_shape() {
        let s = find_stable_shift(1).unwrap();
        let (start, edge) = s.certificate.window;
        assert_eq!(start, s.a0);
        assert!(edge >= start);
        // Envelope margin holds strictly and the slope is certified negative.
        let lhs: u128 = s.certificate.envelope.lhs.parse().unwrap();
        let rhs: u128 = s.certificate.envelope.rhs.parse().unwrap();
        assert!(lhs < rhs);
        assert_eq!(s.certificate.slope.sign, Sign::Negative);
        // Everything in the window really does pass the direct check.
        for a in start..=edge {
            assert!(local_max_dominated(a, 1));
        }
    }

    #[test]
    fn stable_shift_rejects_weight_zero() {
        assert_eq!(find_stable_shift(0), Err(ThresholdError::WeightZero));
    }

    #[test]
    fn report_weight_one() {
        let r = threshold_report(1, None).unwrap();
        assert_eq!(r.a0, 5);
        assert_eq!(r.n0, 10);
        assert!(r.conjecture_holds);
        assert_eq!(r.n_ell(0), 10);
        assert_eq!(r.n_ell(1), 12);
        let crossings: Vec<(u32, u32)> = r.crossing_points.iter().map(|c| (c.a, c.n_a)).collect();
        assert_eq!(crossings, vec![(1, 4), (2, 5), (3, 7), (4, 9)]);
        // Every crossing settles before the stable shift's own peak.
        assert!(r.crossing_points.iter().all(|c| c.n_a < 10));
    }

    #[test]
    fn report_weight_two() {
        let r = threshold_report(2, None).unwrap();
        assert_eq!(r.a0, 14);
        assert_eq!(r.n0, 56);
        assert!(r.conjecture_holds);
        assert_eq!(r.n_ell(1), 60);
    }

    #[test]
    fn report_rejects_small_horizon() {
        assert_eq!(
            threshold_report(1, Some(5)),
            Err(ThresholdError::HorizonTooSmall { horizon: 5, needed: 10 })
        );
    }

    #[test]
    fn reference_rows() {
        assert_eq!(reference_row(1), Some(ReferenceRow { t: 1, rains_bound: 5, m_t: 5, n_t: 12 }));
        assert_eq!(reference_row(4), Some(ReferenceRow { t: 4, rains_bound: 23, m_t: 20, n_t: 288 }));
        assert_eq!(reference_row(7), Some(ReferenceRow { t: 7, rains_bound: 41, m_t: 35, n_t: 980 }));
        assert_eq!(reference_row(8), None);
    }

    #[test]
    fn stable_local_max_implies_dominance_everywhere() {
        // Whenever the local-maximum condition holds, the whole shifted
        // curve sits below the base curve.
        for t in 1..=3u32 {
            let a0 = find_stable_shift(t).unwrap().a0;
            for a in a0..a0 + 3 {
                assert!(local_max_dominated(a, t));
                for n in 1..=500u32 {
                    assert!(dominated_at(a, t, n), "t={t} a={a} n={n}");
                }
            }
        }
    }

    #[test]
    fn table_and_direct_paths_agree() {
        let table = SphereTable::new(2, 120);
        for a in 1..=6u32 {
            for n in 1..=120u32 {
                assert_eq!(table.dominated(a, n), dominated_at(a, 2, n));
            }
        }
    }
}
