//! The sphere-packing bound family, evaluated exactly.
//!
//! Every bound of the form `k <= RHS` with an irrational right-hand side is
//! cleared of logarithms into an integer inequality such as
//! `2^(k+ell) · f_t(n - sigma) <= 2^n` and decided over big integers, so
//! saturation is detected exactly and there is no floating-point tie
//! ambiguity. Inequalities are non-strict as stated; equality is reported
//! through the `saturated` flag and the witness pair.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::{cmp_pow2, min_covering_exponent, sphere_sum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("invalid code parameters [[{n},{k},{d}]]: {reason}")]
    InvalidParams { n: u32, k: u32, d: u32, reason: &'static str },
    #[error("invalid degeneracy profile (ell={ell}, sigma={sigma}) at t={t}: {reason}")]
    InvalidProfile { ell: u32, sigma: u32, t: u32, reason: &'static str },
}

/// The parameters [[n, k, d]] of a stabilizer code, with the derived error
/// weight t = floor((d-1)/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    n: u32,
    k: u32,
    d: u32,
    t: u32,
}

impl CodeParams {
    pub fn new(n: u32, k: u32, d: u32) -> Result<Self, BoundsError> {
        if n == 0 {
            return Err(BoundsError::InvalidParams { n, k, d, reason: "length must be positive" });
        }
        if k > n {
            return Err(BoundsError::InvalidParams { n, k, d, reason: "k exceeds n" });
        }
        if d == 0 {
            return Err(BoundsError::InvalidParams { n, k, d, reason: "distance must be positive" });
        }
        Ok(CodeParams { n, k, d, t: (d - 1) / 2 })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Correctable error weight t = floor((d-1)/2).
    pub fn t(&self) -> u32 {
        self.t
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{}]]", self.n, self.k, self.d)
    }
}

/// Count ell and total weight sigma of an independent set of low-weight
/// (weight at most 2t) stabilizer generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegeneracyProfile {
    pub ell: u32,
    pub sigma: u32,
}

impl DegeneracyProfile {
    /// The empty profile of a code with no low-weight generators.
    pub const TRIVIAL: DegeneracyProfile = DegeneracyProfile { ell: 0, sigma: 0 };

    pub fn new(ell: u32, sigma: u32) -> Self {
        DegeneracyProfile { ell, sigma }
    }

    /// Each counted generator has weight between 1 and 2t, so
    /// ell <= sigma <= 2t·ell.
    pub fn validate(&self, t: u32) -> Result<(), BoundsError> {
        if self.sigma < self.ell {
            return Err(BoundsError::InvalidProfile {
                ell: self.ell,
                sigma: self.sigma,
                t,
                reason: "sigma below ell",
            });
        }
        if u64::from(self.sigma) > 2 * u64::from(t) * u64::from(self.ell) {
            return Err(BoundsError::InvalidProfile {
                ell: self.ell,
                sigma: self.sigma,
                t,
                reason: "sigma exceeds 2t·ell",
            });
        }
        Ok(())
    }
}

/// Largest admissible k under one bound.
///
/// Every bound in this family caps k at n (the sphere count is at least 1),
/// so a finite `Bounded` value or `NoneAdmissible` covers all cases; no
/// bound here is vacuous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MaxK {
    /// Even k = 0 violates the bound.
    NoneAdmissible,
    Bounded(u32),
}

impl MaxK {
    pub fn admits(&self, k: u32) -> bool {
        match self {
            MaxK::NoneAdmissible => false,
            MaxK::Bounded(max) => k <= *max,
        }
    }

    pub fn bounded(&self) -> Option<u32> {
        match self {
            MaxK::NoneAdmissible => None,
            MaxK::Bounded(max) => Some(*max),
        }
    }
}

impl fmt::Display for MaxK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxK::NoneAdmissible => write!(f, "none"),
            MaxK::Bounded(max) => write!(f, "{max}"),
        }
    }
}

impl Serialize for MaxK {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            MaxK::NoneAdmissible => serializer.serialize_str("none"),
            MaxK::Bounded(max) => serializer.serialize_u32(*max),
        }
    }
}

/// Identity of one bound in the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundId {
    QuantumHamming,
    ClassicalHamming,
    /// The (ell, sigma) bound for codes with an explicit low-weight
    /// generator profile.
    LowWeightProfile,
    /// Same bound computed through the shifted form of the base curve;
    /// kept as an independent route for equivalence checking.
    LowWeightProfileShifted,
    /// The (ell, t)-bound: worst case sigma = 2t·ell.
    EllT,
    /// The (1, t)-bound specialized to degenerate codes.
    DegenerateHamming,
    /// Reference distance-3 bound log2(4n - k + 1) <= n - k.
    #[serde(rename = "prior-distance-3")]
    PriorDistance3,
    Singleton,
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            BoundId::QuantumHamming => "quantum-hamming",
            BoundId::ClassicalHamming => "classical-hamming",
            BoundId::LowWeightProfile => "low-weight-profile",
            BoundId::LowWeightProfileShifted => "low-weight-profile-shifted",
            BoundId::EllT => "ell-t",
            BoundId::DegenerateHamming => "degenerate-hamming",
            BoundId::PriorDistance3 => "prior-distance-3",
            BoundId::Singleton => "singleton",
        };
        f.write_str(name)
    }
}

/// The exact integer pair compared for a verdict, rendered in decimal.
/// The recorded relation is `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonWitness {
    pub lhs: String,
    pub rhs: String,
}

impl ComparisonWitness {
    pub fn of_biguints(lhs: &BigUint, rhs: &BigUint) -> Self {
        ComparisonWitness { lhs: lhs.to_string(), rhs: rhs.to_string() }
    }

    pub fn of_ints(lhs: i64, rhs: i64) -> Self {
        ComparisonWitness { lhs: lhs.to_string(), rhs: rhs.to_string() }
    }

    pub fn is_equality(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Outcome of checking one bound against one set of code parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundVerdict {
    pub bound: BoundId,
    pub max_k: MaxK,
    pub holds: bool,
    pub saturated: bool,
    pub witness: ComparisonWitness,
}

impl BoundVerdict {
    fn from_max_k(bound: BoundId, max_k: MaxK, k: u32, witness: ComparisonWitness) -> Self {
        BoundVerdict {
            bound,
            max_k,
            holds: max_k.admits(k),
            saturated: max_k == MaxK::Bounded(k),
            witness,
        }
    }
}

/// Largest k >= 0 with `2^k · f <= 2^cap`, if any.
fn max_shift_below(f: &BigUint, cap: u64) -> MaxK {
    let need = min_covering_exponent(f);
    if cap >= need {
        MaxK::Bounded((cap - need) as u32)
    } else {
        MaxK::NoneAdmissible
    }
}

/// Largest k with 2^k · f_t(n) <= 2^n: the quantum Hamming bound.
pub fn qhamming_max_k(n: u32, t: u32) -> MaxK {
    max_shift_below(&sphere_sum(n.into(), t), n.into())
}

pub fn qhamming_verdict(params: &CodeParams) -> BoundVerdict {
    let f = sphere_sum(params.n.into(), params.t);
    let max_k = max_shift_below(&f, params.n.into());
    let lhs = f << params.k;
    let rhs = BigUint::one() << params.n;
    BoundVerdict::from_max_k(
        BoundId::QuantumHamming,
        max_k,
        params.k,
        ComparisonWitness::of_biguints(&lhs, &rhs),
    )
}

/// Classical sphere-packing check K · sum((q-1)^i C(n,i), i=0..=t) <= q^n
/// over an alphabet of size q, with t = floor((d-1)/2).
///
/// `max_k` reports the largest e with q^e · S <= q^n (the admissible size
/// exponent); `holds` uses the actual size K, and `saturated` is set when K
/// is exactly q^max_k.
pub fn classical_hamming_verdict(n: u32, size: &BigUint, d: u32, q: u32) -> BoundVerdict {
    let t = (d - 1) / 2;
    let qm1 = BigUint::from(q - 1);
    let mut term = BigUint::one();
    let mut spheres = BigUint::one();
    for i in 0..u64::from(t) {
        if i >= u64::from(n) {
            break;
        }
        term = term * &qm1 * (u64::from(n) - i) / (i + 1);
        spheres += &term;
    }
    let qn = num_traits::pow(BigUint::from(q), n as usize);
    let lhs = size * &spheres;
    let holds = lhs <= qn;
    let mut max_e = 0u32;
    let mut power = spheres.clone();
    loop {
        let next = &power * q;
        if next > qn {
            break;
        }
        power = next;
        max_e += 1;
    }
    let max_k = if &spheres <= &qn { MaxK::Bounded(max_e) } else { MaxK::NoneAdmissible };
    let saturated = match max_k {
        MaxK::Bounded(e) => *size == num_traits::pow(BigUint::from(q), e as usize),
        MaxK::NoneAdmissible => false,
    };
    BoundVerdict {
        bound: BoundId::ClassicalHamming,
        max_k,
        holds,
        saturated,
        witness: ComparisonWitness::of_biguints(&lhs, &qn),
    }
}

/// Largest k under the low-weight-profile bound: when sigma <= n,
/// 2^(k+ell) · f_t(n - sigma) <= 2^n; when sigma > n, k <= n - ell.
pub fn low_weight_max_k(
    n: u32,
    t: u32,
    profile: &DegeneracyProfile,
) -> Result<MaxK, BoundsError> {
    profile.validate(t)?;
    Ok(low_weight_max_k_unchecked(n, t, profile.ell, profile.sigma))
}

fn low_weight_max_k_unchecked(n: u32, t: u32, ell: u32, sigma: u32) -> MaxK {
    if sigma <= n {
        if ell > n {
            return MaxK::NoneAdmissible;
        }
        max_shift_below(&sphere_sum((n - sigma).into(), t), (n - ell).into())
    } else if ell <= n {
        MaxK::Bounded(n - ell)
    } else {
        MaxK::NoneAdmissible
    }
}

/// Same contract as [`low_weight_max_k`], computed through the shifted
/// base curve: k <= floor(h_t(n - sigma)) + sigma - ell, with the covering
/// power of two materialized in full. Exists as an algebraically
/// independent route so the equivalence of the two forms can be tested.
pub fn low_weight_shifted_max_k(
    n: u32,
    t: u32,
    profile: &DegeneracyProfile,
) -> Result<MaxK, BoundsError> {
    profile.validate(t)?;
    let (ell, sigma) = (profile.ell, profile.sigma);
    if sigma > n {
        return Ok(if ell <= n { MaxK::Bounded(n - ell) } else { MaxK::NoneAdmissible });
    }
    if ell > n {
        return Ok(MaxK::NoneAdmissible);
    }
    let rest = n - sigma;
    let f = sphere_sum(rest.into(), t);
    // ceil(log2 f) by direct materialization.
    let mut e = f.bits().saturating_sub(1);
    if (BigUint::one() << e) < f {
        e += 1;
    }
    // floor(h_t(rest)) + sigma - ell = n - ell - ceil(log2 f)
    let cap = i64::from(n) - i64::from(ell) - e as i64;
    Ok(if cap < 0 { MaxK::NoneAdmissible } else { MaxK::Bounded(cap as u32) })
}

pub fn low_weight_verdict(params: &CodeParams, profile: &DegeneracyProfile) -> Result<BoundVerdict, BoundsError> {
    profile.validate(params.t)?;
    Ok(profile_verdict(
        BoundId::LowWeightProfile,
        params,
        profile.ell,
        profile.sigma,
    ))
}

fn profile_verdict(bound: BoundId, params: &CodeParams, ell: u32, sigma: u32) -> BoundVerdict {
    let n = params.n;
    let max_k = low_weight_max_k_unchecked(n, params.t, ell, sigma);
    let witness = if sigma <= n {
        let f = sphere_sum((n - sigma).into(), params.t);
        let lhs = f << (params.k + ell);
        let rhs = BigUint::one() << n;
        ComparisonWitness::of_biguints(&lhs, &rhs)
    } else {
        ComparisonWitness::of_ints(params.k.into(), i64::from(n) - i64::from(ell))
    };
    BoundVerdict::from_max_k(bound, max_k, params.k, witness)
}

/// The (ell, t)-bound: the low-weight bound at the worst admissible total
/// weight sigma = 2t·ell. The (0, t)-bound is the quantum Hamming bound.
pub fn ell_t_max_k(n: u32, t: u32, ell: u32) -> MaxK {
    let sigma = 2 * u64::from(t) * u64::from(ell);
    if sigma <= u64::from(n) {
        low_weight_max_k_unchecked(n, t, ell, sigma as u32)
    } else if ell <= n {
        MaxK::Bounded(n - ell)
    } else {
        MaxK::NoneAdmissible
    }
}

pub fn ell_t_verdict(params: &CodeParams, ell: u32) -> BoundVerdict {
    let sigma = 2 * u64::from(params.t) * u64::from(ell);
    if sigma <= u64::from(params.n) {
        profile_verdict(BoundId::EllT, params, ell, sigma as u32)
    } else {
        let max_k = ell_t_max_k(params.n, params.t, ell);
        BoundVerdict::from_max_k(
            BoundId::EllT,
            max_k,
            params.k,
            ComparisonWitness::of_ints(params.k.into(), i64::from(params.n) - i64::from(ell)),
        )
    }
}

/// The bound for degenerate codes: k <= n - 1 - log2(f_t(n - 2t)),
/// i.e. the (1, t)-bound. Callers should ensure n >= 2t + 1.
pub fn degenerate_bound_max_k(n: u32, t: u32) -> MaxK {
    ell_t_max_k(n, t, 1)
}

pub fn degenerate_verdict(params: &CodeParams) -> BoundVerdict {
    let mut v = ell_t_verdict(params, 1);
    v.bound = BoundId::DegenerateHamming;
    v
}

/// Reference distance-3 bound: 4n - k + 1 <= 2^(n - k). Requires k <= n.
pub fn prior_distance3_verdict(n: u32, k: u32) -> BoundVerdict {
    debug_assert!(k <= n);
    let holds_at = |kk: u32| -> bool {
        let lhs = BigUint::from(4 * u64::from(n) - u64::from(kk) + 1);
        cmp_pow2(&lhs, (n - kk).into()) != Ordering::Greater
    };
    let max_k = (0..=n).rev().find(|kk| holds_at(*kk)).map_or(MaxK::NoneAdmissible, MaxK::Bounded);
    let lhs = BigUint::from(4 * u64::from(n) - u64::from(k) + 1);
    let rhs = BigUint::one() << (n - k);
    BoundVerdict::from_max_k(
        BoundId::PriorDistance3,
        max_k,
        k,
        ComparisonWitness::of_biguints(&lhs, &rhs),
    )
}

/// Quantum Singleton bound k <= n - 2d + 2; `NoneAdmissible` when even
/// k = 0 is impossible (n < 2d - 2).
pub fn singleton_max_k(n: u32, d: u32) -> MaxK {
    let cap = i64::from(n) - 2 * i64::from(d) + 2;
    if cap < 0 {
        MaxK::NoneAdmissible
    } else {
        MaxK::Bounded(cap as u32)
    }
}

pub fn singleton_verdict(params: &CodeParams) -> BoundVerdict {
    let max_k = singleton_max_k(params.n, params.d);
    BoundVerdict::from_max_k(
        BoundId::Singleton,
        max_k,
        params.k,
        ComparisonWitness::of_ints(
            params.k.into(),
            i64::from(params.n) - 2 * i64::from(params.d) + 2,
        ),
    )
}
