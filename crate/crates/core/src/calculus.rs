//! Exact-rational calculus for the curve h_t(x) = x - log2 f_t(x).
//!
//! The sphere count f_t is expanded once into a polynomial with exact
//! rational coefficients; values and the first two formal derivatives are
//! evaluated anywhere without poles. Sign questions about h'_t reduce to a
//! certified comparison of f'_t against ln2·f_t, and sign questions about
//! h''_t are purely rational. On top of these primitives sits a bulk
//! verifier that sweeps the structural lemmas about h_t (exact value on the
//! small-n plateau, positivity, unit-shift monotonicity, derivative signs
//! at 2t-2 and 2t, convexity, slope below one, the location of the integer
//! local minimum, and dominance of shifted curves) over parameter ranges
//! and reports each failure with its exact witness.

use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{
    decimal_half_even, ln2_enclosure, min_covering_exponent, sign_q_minus_r_ln2_with_ceiling,
    sphere_sum, CertifiedSign, ExactError, Sign, DEFAULT_PRECISION_CEILING,
};
use crate::thresholds::{dominated_at, local_max_dominated};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalculusError {
    /// h'_t is only defined where f_t is positive.
    #[error("f_{t}({x}) is not positive; the slope of h is undefined there")]
    NonPositiveValue { t: u32, x: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// f_t expanded as a polynomial with exact rational coefficients,
/// ascending by power. The first two formal derivatives are precomputed so
/// evaluation in bulk sweeps stays a plain Horner pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpherePolynomial {
    t: u32,
    coeffs: Vec<BigRational>,
    d1: Vec<BigRational>,
    d2: Vec<BigRational>,
}

fn eval(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn derive(coeffs: &[BigRational]) -> Vec<BigRational> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| c * BigRational::from_integer(BigInt::from(j)))
        .collect()
}

impl SpherePolynomial {
    /// Expand f_t(x) = sum over i of (3^i / i!) · x(x-1)···(x-i+1).
    pub fn new(t: u32) -> Self {
        let mut coeffs = vec![BigRational::one()];
        let mut falling = vec![BigRational::one()];
        let mut scale = BigRational::one();
        for i in 1..=i64::from(t) {
            // falling *= (x - (i - 1))
            let mut next = vec![BigRational::zero(); falling.len() + 1];
            let root = BigRational::from_integer(BigInt::from(i - 1));
            for (j, c) in falling.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * &root;
            }
            falling = next;
            scale *= BigRational::new(BigInt::from(3), BigInt::from(i));
            if coeffs.len() < falling.len() {
                coeffs.resize(falling.len(), BigRational::zero());
            }
            for (j, c) in falling.iter().enumerate() {
                coeffs[j] += c * &scale;
            }
        }
        let d1 = derive(&coeffs);
        let d2 = derive(&d1);
        SpherePolynomial { t, coeffs, d1, d2 }
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn value(&self, x: &BigRational) -> BigRational {
        eval(&self.coeffs, x)
    }

    /// f, f' and f'' at one point.
    pub fn triple(&self, x: &BigRational) -> DerivativeTriple {
        DerivativeTriple {
            f: eval(&self.coeffs, x),
            f1: eval(&self.d1, x),
            f2: eval(&self.d2, x),
        }
    }
}

/// Values of f_t, f'_t and f''_t at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeTriple {
    pub f: BigRational,
    pub f1: BigRational,
    pub f2: BigRational,
}

pub fn derivative_triple(t: u32, x: &BigRational) -> DerivativeTriple {
    SpherePolynomial::new(t).triple(x)
}

/// h_t at an integer point, without ever producing a float.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HValue {
    /// h_t(n) is exactly this integer: n itself below zero, and -n on the
    /// plateau 0 <= n <= t where f_t(n) = 4^n.
    Exact(i64),
    /// h_t(n) = n - log2 f; the exact pair is handed to the consumer for
    /// downstream integer comparisons.
    LogPair { n: u64, f: BigUint },
}

impl HValue {
    /// floor(h_t(n)): exact values pass through, log pairs resolve as
    /// n - ceil(log2 f).
    pub fn floor(&self) -> i64 {
        match self {
            HValue::Exact(v) => *v,
            HValue::LogPair { n, f } => *n as i64 - min_covering_exponent(f) as i64,
        }
    }
}

pub fn h_at_integer(t: u32, n: i64) -> HValue {
    if n < 0 {
        HValue::Exact(n)
    } else if n <= i64::from(t) {
        HValue::Exact(-n)
    } else {
        HValue::LogPair { n: n as u64, f: sphere_sum(n as u64, t) }
    }
}

/// Certified sign of h'_t(x) = 1 - f'_t(x) / (ln2 · f_t(x)), which on the
/// domain f_t > 0 equals the sign of ln2·f_t(x) - f'_t(x).
pub fn hprime_sign(t: u32, x: &BigRational) -> Result<CertifiedSign, CalculusError> {
    hprime_sign_with_ceiling(t, x, DEFAULT_PRECISION_CEILING)
}

pub fn hprime_sign_with_ceiling(
    t: u32,
    x: &BigRational,
    ceiling_bits: u32,
) -> Result<CertifiedSign, CalculusError> {
    let triple = derivative_triple(t, x);
    if !triple.f.is_positive() {
        return Err(CalculusError::NonPositiveValue { t, x: x.to_string() });
    }
    // sign(ln2·f - f') = sign((-f') - (-f)·ln2)
    Ok(sign_q_minus_r_ln2_with_ceiling(&-triple.f1, &-triple.f, ceiling_bits)?)
}

/// Display-only rational approximation of h'_t(x), evaluated at the
/// midpoint of a ln 2 enclosure of the requested width. Never used for
/// verdicts.
pub fn hprime_approx(t: u32, x: &BigRational, bits: u32) -> Result<BigRational, CalculusError> {
    let triple = derivative_triple(t, x);
    if !triple.f.is_positive() {
        return Err(CalculusError::NonPositiveValue { t, x: x.to_string() });
    }
    let (lo, hi) = ln2_enclosure(bits);
    let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
    Ok(BigRational::one() - triple.f1 / (mid * triple.f))
}

/// Sign of (f'_t)^2 - f_t·f''_t at x: purely rational, and equal to the
/// sign of h''_t wherever f_t > 0.
pub fn hsecond_numerator_sign(t: u32, x: &BigRational) -> Sign {
    let triple = derivative_triple(t, x);
    Sign::of_rational(&(&triple.f1 * &triple.f1 - triple.f * triple.f2))
}

/// One verified statement, with the exact witness on failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub id: String,
    pub t: u32,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Display approximation of a slope value, alongside its certified sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpotValue {
    pub t: u32,
    pub x: String,
    pub sign: CertifiedSign,
    /// Three decimal places, rounded half-even; display only.
    pub approx: String,
}

/// Outcome of the bulk lemma sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CalculusReport {
    pub t_min: u32,
    pub t_max: u32,
    pub x_max: u32,
    pub checks: Vec<LemmaCheck>,
    pub spot_values: Vec<SpotValue>,
    pub all_pass: bool,
}

/// Sweep every structural lemma about h_t over `t_range`, with integer
/// scans up to `x_max`. A failed check never aborts the sweep; it is
/// recorded with its witness integers. Weight t = 0 has no shifted-curve
/// structure and is skipped.
pub fn verify_calculus(
    t_range: RangeInclusive<u32>,
    x_max: u32,
) -> Result<CalculusReport, CalculusError> {
    let (t_min, t_max) = (*t_range.start(), *t_range.end());
    let mut checks = Vec::new();
    let mut spot_values = Vec::new();
    for t in t_range {
        if t == 0 {
            continue;
        }
        let poly = SpherePolynomial::new(t);
        checks.push(check_plateau_identity(t));
        checks.push(check_positivity(t, &poly, x_max));
        checks.push(check_unit_shift(t, x_max));
        checks.push(check_hprime_at(t, 2 * i64::from(t) - 2, Sign::Negative)?);
        checks.push(check_hprime_at(t, 2 * i64::from(t), Sign::Positive)?);
        checks.push(check_convexity(t, &poly, x_max));
        checks.push(check_slope_below_one(t, &poly, x_max));
        checks.push(check_local_min_window(t, x_max));
        checks.push(check_shift_dominance(t));
        if t == 1 || t == 2 {
            let x = BigRational::from_integer(BigInt::from(2 * i64::from(t) - 2));
            let sign = hprime_sign(t, &x)?;
            let approx = decimal_half_even(&hprime_approx(t, &x, 128)?, 3);
            spot_values.push(SpotValue { t, x: x.to_string(), sign, approx });
        }
    }
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(CalculusReport { t_min, t_max, x_max, checks, spot_values, all_pass })
}

fn pass(id: &str, t: u32) -> LemmaCheck {
    LemmaCheck { id: id.to_owned(), t, pass: true, witness: None }
}

fn fail(id: &str, t: u32, witness: String) -> LemmaCheck {
    LemmaCheck { id: id.to_owned(), t, pass: false, witness: Some(witness) }
}

/// h_t(n) = -n on 0..=t, i.e. f_t(n) = 4^n there.
fn check_plateau_identity(t: u32) -> LemmaCheck {
    let id = "plateau-identity";
    for n in 0..=u64::from(t) {
        let f = sphere_sum(n, t);
        let expected = num_traits::pow(BigUint::from(4u32), n as usize);
        if f != expected {
            return fail(id, t, format!("f_{t}({n}) = {f} != 4^{n} = {expected}"));
        }
    }
    pass(id, t)
}

/// f_t(n) > 0 at integer points from t-1 on (evaluated through the
/// polynomial so the rational path is exercised).
fn check_positivity(t: u32, poly: &SpherePolynomial, x_max: u32) -> LemmaCheck {
    let id = "positivity";
    let start = i64::from(t) - 1;
    for n in start.max(0)..=i64::from(x_max) {
        let v = poly.value(&BigRational::from_integer(BigInt::from(n)));
        if !v.is_positive() {
            return fail(id, t, format!("f_{t}({n}) = {v} <= 0"));
        }
    }
    pass(id, t)
}

/// f_t(n-1) <= f_t(n): the unit shift never lowers the sphere count.
fn check_unit_shift(t: u32, x_max: u32) -> LemmaCheck {
    let id = "unit-shift";
    let mut prev = sphere_sum(0, t);
    for n in 1..=u64::from(x_max) {
        let cur = sphere_sum(n, t);
        if prev > cur {
            return fail(id, t, format!("f_{t}({}) = {prev} > f_{t}({n}) = {cur}", n - 1));
        }
        prev = cur;
    }
    pass(id, t)
}

fn check_hprime_at(t: u32, x: i64, expected: Sign) -> Result<LemmaCheck, CalculusError> {
    let id = match expected {
        Sign::Negative => "hprime-negative-before-min",
        _ => "hprime-positive-after-min",
    };
    let point = BigRational::from_integer(BigInt::from(x));
    let sign = hprime_sign(t, &point)?;
    Ok(if sign.sign == expected {
        pass(id, t)
    } else {
        fail(id, t, format!("sign of h'_{t}({x}) is {:?}, expected {:?}", sign.sign, expected))
    })
}

/// (f')^2 - f·f'' > 0 at integer x in [t, x_max]: h_t is strictly convex
/// on that range.
fn check_convexity(t: u32, poly: &SpherePolynomial, x_max: u32) -> LemmaCheck {
    let id = "convexity";
    for x in i64::from(t)..=i64::from(x_max) {
        let tr = poly.triple(&BigRational::from_integer(BigInt::from(x)));
        let num = &tr.f1 * &tr.f1 - &tr.f * &tr.f2;
        if !num.is_positive() {
            return fail(id, t, format!("(f')^2 - f·f'' = {num} at x = {x}"));
        }
    }
    pass(id, t)
}

/// f'_t(x) > 0 on [t, x_max]; combined with positivity this pins
/// h'_t(x) < 1 there.
fn check_slope_below_one(t: u32, poly: &SpherePolynomial, x_max: u32) -> LemmaCheck {
    let id = "slope-below-one";
    for x in i64::from(t)..=i64::from(x_max) {
        let tr = poly.triple(&BigRational::from_integer(BigInt::from(x)));
        if !tr.f1.is_positive() {
            return fail(id, t, format!("f'_{t}({x}) = {} <= 0", tr.f1));
        }
    }
    pass(id, t)
}

/// The integer sequence h_t(n) descends, reaches a single local minimum in
/// the window [2t-2, 2t], and never descends again. Neighbor comparisons
/// are exact: h_t(n+1) < h_t(n) iff f_t(n+1) > 2·f_t(n).
fn check_local_min_window(t: u32, x_max: u32) -> LemmaCheck {
    let id = "local-min-window";
    let descends = |n: u64| sphere_sum(n + 1, t) > (sphere_sum(n, t) << 1u8);
    let mut min_at = None;
    for n in 0..=u64::from(x_max) {
        if !descends(n) {
            min_at = Some(n);
            break;
        }
    }
    let Some(min_at) = min_at else {
        return fail(id, t, format!("h_{t} still descending at n = {x_max}"));
    };
    let window = (2 * i64::from(t) - 2, 2 * i64::from(t));
    if (min_at as i64) < window.0 || (min_at as i64) > window.1 {
        return fail(
            id,
            t,
            format!("local minimum at n = {min_at}, outside [{}, {}]", window.0, window.1),
        );
    }
    for n in min_at..u64::from(x_max) {
        if descends(n) {
            return fail(id, t, format!("h_{t} descends again at n = {n}"));
        }
    }
    pass(id, t)
}

/// Spot check: whenever a shift's local maximum sits below the base curve,
/// the whole shifted curve does, at 200 sampled lengths.
fn check_shift_dominance(t: u32) -> LemmaCheck {
    let id = "shift-dominance";
    let shifts: Vec<u32> = (1..=64).filter(|&a| local_max_dominated(a, t)).take(3).collect();
    for a in shifts {
        let horizon = (4 * t * a).max(500);
        for j in 1..=200u32 {
            let n = (u64::from(j) * u64::from(horizon)).div_ceil(200) as u32;
            if !dominated_at(a, t, n) {
                return fail(id, t, format!("shift a = {a} not dominated at n = {n}"));
            }
        }
    }
    pass(id, t)
}
