//! Exact integer and rational primitives, plus certified sign decisions
//! against rational multiples of ln 2.
//!
//! Everything downstream decides inequalities through this module. Bound
//! checks are cleared of logarithms and compared as big integers; the only
//! transcendental quantity that ever appears is ln 2, and comparisons
//! against it go through a directed rational enclosure that widens its
//! precision until the sign is mathematically certain.

use std::cmp::Ordering;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

/// Cap on enclosure precision for sign decisions. Every sign the library
/// needs resolves far below this; the ceiling only guards pathological
/// inputs that approximate ln 2 too well.
pub const DEFAULT_PRECISION_CEILING: u32 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    /// The sign of `q - r·ln2` did not resolve within the precision ceiling.
    #[error("sign unresolved after {ceiling_bits} bits of ln 2 precision")]
    PrecisionExhausted { ceiling_bits: u32 },
}

/// Three-way sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(q: &BigRational) -> Sign {
        if q.is_positive() {
            Sign::Positive
        } else if q.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// A sign decision together with the ln 2 precision consumed to reach it.
///
/// A returned sign is guaranteed, not estimated: the underlying enclosure
/// bounds the true value away from zero before the sign is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CertifiedSign {
    pub sign: Sign,
    /// Bits of ln 2 enclosure width consumed; 0 when no enclosure was needed.
    pub precision_bits: u32,
}

/// Binomial coefficient C(n, i); zero when `i > n`.
pub fn binom(n: u64, i: u64) -> BigUint {
    if i > n {
        return BigUint::zero();
    }
    let i = i.min(n - i);
    let mut acc = BigUint::one();
    for j in 0..i {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// The sphere count f_t(n) = sum over i = 0..=t of 3^i C(n, i): the number
/// of Pauli errors of weight at most t on n qubits.
pub fn sphere_sum(n: u64, t: u32) -> BigUint {
    let mut term = BigUint::one();
    let mut acc = BigUint::one();
    for i in 0..u64::from(t) {
        if i >= n {
            break;
        }
        // 3^{i+1} C(n, i+1) from 3^i C(n, i); multiply before dividing so
        // every intermediate stays integral.
        term = term * 3u32 * (n - i) / (i + 1);
        acc += &term;
    }
    acc
}

/// Three-way comparison of `lhs` against 2^e without materializing the
/// power when the bit length already decides it.
pub fn cmp_pow2(lhs: &BigUint, e: u64) -> Ordering {
    let bits = lhs.bits(); // 2^e has bit length e + 1
    if bits < e + 1 {
        return Ordering::Less;
    }
    if bits > e + 1 {
        return Ordering::Greater;
    }
    // Same bit length: equal exactly when lhs is the power itself.
    if lhs.trailing_zeros() == Some(e) {
        Ordering::Equal
    } else {
        Ordering::Greater
    }
}

/// Exact rational enclosure `(lo, hi)` with `lo < ln 2 < hi` and
/// `hi - lo <= 2^-bits`.
///
/// Built from the series ln 2 = 2·artanh(1/3) = sum over j >= 0 of
/// 2 / ((2j+1)·3^(2j+1)). Partial sums approach from below; the geometric
/// tail bound (ratio < 1/9) gives the upper end. The construction is fully
/// deterministic, so repeated runs produce bit-identical enclosures.
pub fn ln2_enclosure(bits: u32) -> (BigRational, BigRational) {
    let nine = BigUint::from(9u32);
    let target = BigUint::from(9u32) << bits; // tail <= 2^-bits  <=>  9·2^bits <= 4(2J+1)3^(2J+1)
    let mut terms = 1u64;
    let mut power = BigUint::from(27u32); // 3^(2J+1) at J = terms
    while BigUint::from(4 * (2 * terms + 1)) * &power < target {
        terms += 1;
        power *= &nine;
    }
    let mut lo = BigRational::zero();
    let mut p = BigInt::from(3);
    for j in 0..terms {
        lo += BigRational::new(BigInt::from(2), BigInt::from(2 * j + 1) * &p);
        p *= 9;
    }
    // p is now 3^(2J+1); tail < (9/8)·2/((2J+1)·3^(2J+1))
    let tail = BigRational::new(BigInt::from(9), BigInt::from(4 * (2 * terms + 1)) * p);
    let hi = &lo + tail;
    (lo, hi)
}

/// Smallest exponent e with `f <= 2^e`, i.e. the ceiling of log2 f, for
/// `f >= 1`.
pub(crate) fn min_covering_exponent(f: &BigUint) -> u64 {
    let hint = f.bits().saturating_sub(1);
    match cmp_pow2(f, hint) {
        Ordering::Greater => hint + 1,
        _ => hint,
    }
}

/// Certified sign of `q - r·ln2` under the default precision ceiling.
///
/// When `r = 0` the answer is the sign of `q` with no enclosure work. When
/// `r != 0` the value is provably nonzero (ln 2 is irrational while `q/r`
/// is rational), so widening the enclosure always terminates in principle;
/// the ceiling turns a pathological input into an explicit error instead
/// of a guess.
pub fn sign_q_minus_r_ln2(q: &BigRational, r: &BigRational) -> Result<CertifiedSign, ExactError> {
    sign_q_minus_r_ln2_with_ceiling(q, r, DEFAULT_PRECISION_CEILING)
}

/// As [`sign_q_minus_r_ln2`] with an explicit precision ceiling in bits.
pub fn sign_q_minus_r_ln2_with_ceiling(
    q: &BigRational,
    r: &BigRational,
    ceiling_bits: u32,
) -> Result<CertifiedSign, ExactError> {
    if r.is_zero() {
        return Ok(CertifiedSign {
            sign: Sign::of_rational(q),
            precision_bits: 0,
        });
    }
    let mut bits = 32u32.min(ceiling_bits.max(1));
    loop {
        let (lo, hi) = ln2_enclosure(bits);
        // q - r·[lo, hi] = [q - r·hi, q - r·lo] for positive r, flipped otherwise.
        let a = q - r * &hi;
        let b = q - r * &lo;
        let (int_lo, int_hi) = if r.is_positive() { (a, b) } else { (b, a) };
        if int_lo.is_positive() {
            return Ok(CertifiedSign {
                sign: Sign::Positive,
                precision_bits: bits,
            });
        }
        if int_hi.is_negative() {
            return Ok(CertifiedSign {
                sign: Sign::Negative,
                precision_bits: bits,
            });
        }
        if bits >= ceiling_bits {
            return Err(ExactError::PrecisionExhausted {
                ceiling_bits,
            });
        }
        bits = bits.saturating_mul(2).min(ceiling_bits);
    }
}

/// Render `q` as a decimal string with the given number of places, rounding
/// ties half-to-even. Display plumbing only; verdicts never depend on it.
pub fn decimal_half_even(q: &BigRational, places: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), places as usize);
    let scaled = q * BigRational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let frac = &scaled - BigRational::from_integer(floor.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rounded = match frac.cmp(&half) {
        Ordering::Less => floor,
        Ordering::Greater => floor + 1,
        Ordering::Equal => {
            if (&floor % 2i32).is_zero() {
                floor
            } else {
                floor + 1
            }
        }
    };
    let negative = rounded.is_negative();
    let magnitude = rounded.magnitude().clone();
    let scale_mag = scale.magnitude().clone();
    let int_part = &magnitude / &scale_mag;
    let frac_part = &magnitude % &scale_mag;
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac_part:0>width$}",
            width = places as usize
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Pascal-triangle binomials: additions only, independent of `binom`.
    fn pascal_row(n: usize) -> Vec<BigUint> {
        let mut row = vec![BigUint::one()];
        for _ in 0..n {
            let mut next = vec![BigUint::one()];
            for w in row.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigUint::one());
            row = next;
        }
        row
    }

    /// Term-by-term oracle for f_t(n) using Pascal binomials and repeated
    /// multiplication for the powers of three.
    fn sphere_sum_oracle(n: u64, t: u32) -> BigUint {
        let row = pascal_row(n as usize);
        let mut acc = BigUint::zero();
        let mut pow3 = BigUint::one();
        for i in 0..=t as usize {
            if i < row.len() {
                acc += &pow3 * &row[i];
            }
            pow3 *= 3u32;
        }
        acc
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(0, 0), BigUint::one());
        assert_eq!(binom(4, 2), BigUint::from(6u32));
        assert_eq!(binom(3, 5), BigUint::zero());
    }

    #[test]
    fn binom_matches_pascal() {
        for n in 0..=60u64 {
            let row = pascal_row(n as usize);
            for (i, expected) in row.iter().enumerate() {
                assert_eq!(binom(n, i as u64), *expected, "C({n},{i})");
            }
        }
    }

    #[test]
    fn sphere_sum_examples() {
        assert_eq!(sphere_sum(5, 1), BigUint::from(16u32));
        for n in [0u64, 1, 7, 100] {
            assert_eq!(sphere_sum(n, 0), BigUint::one());
        }
        assert_eq!(sphere_sum(10, 2), BigUint::from(436u32));
    }

    proptest! {
        #[test]
        fn sphere_sum_matches_oracle(n in 0u64..=200, t in 0u32..=8) {
            prop_assert_eq!(sphere_sum(n, t), sphere_sum_oracle(n, t));
        }

        #[test]
        fn sign_never_zero_for_nonzero_r(
            qn in -1000i64..1000, qd in 1i64..200,
            rn in proptest::sample::select(vec![-7i64, -3, -1, 1, 2, 5, 11]),
            rd in 1i64..200,
        ) {
            let s = sign_q_minus_r_ln2(&rat(qn, qd), &rat(rn, rd)).unwrap();
            prop_assert_ne!(s.sign, Sign::Zero);
        }

        #[test]
        fn sign_stable_under_larger_ceiling(
            qn in -500i64..500, qd in 1i64..100, rn in 1i64..50, rd in 1i64..100,
        ) {
            let q = rat(qn, qd);
            let r = rat(rn, rd);
            let a = sign_q_minus_r_ln2_with_ceiling(&q, &r, 256).unwrap();
            let b = sign_q_minus_r_ln2_with_ceiling(&q, &r, 4096).unwrap();
            prop_assert_eq!(a.sign, b.sign);
        }
    }

    #[test]
    fn cmp_pow2_examples() {
        assert_eq!(cmp_pow2(&BigUint::from(31u32), 5), Ordering::Less);
        assert_eq!(cmp_pow2(&BigUint::from(32u32), 5), Ordering::Equal);
        // f_2(56) = 14029 < 2^14, the comparison behind the a0(2) search.
        assert_eq!(sphere_sum(56, 2), BigUint::from(14029u32));
        assert_eq!(cmp_pow2(&BigUint::from(14029u32), 14), Ordering::Less);
        assert_eq!(cmp_pow2(&BigUint::zero(), 0), Ordering::Less);
        assert_eq!(cmp_pow2(&BigUint::one(), 0), Ordering::Equal);
    }

    #[test]
    fn cmp_pow2_matches_materialized_on_random_inputs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let nbytes = rng.gen_range(1..=48);
            let mut bytes = vec![0u8; nbytes];
            rng.fill(&mut bytes[..]);
            let x = BigUint::from_bytes_le(&bytes);
            let e = rng.gen_range(0..400u64);
            let materialized = BigUint::one() << e;
            assert_eq!(cmp_pow2(&x, e), x.cmp(&materialized));
        }
    }

    #[test]
    fn ln2_enclosure_brackets_known_digits() {
        // 0.69314718055994530941 < ln 2 < 0.69314718055994530942
        let known_lo = BigRational::new(
            BigInt::from(69314718055994530941u128),
            BigInt::from(10u8).pow(20),
        );
        let known_hi = BigRational::new(
            BigInt::from(69314718055994530942u128),
            BigInt::from(10u8).pow(20),
        );
        for bits in [32u32, 64, 128, 256] {
            let (lo, hi) = ln2_enclosure(bits);
            assert!(lo < hi);
            assert!(lo < known_hi && known_lo < hi, "enclosure misses ln 2 at {bits} bits");
            let width = &hi - &lo;
            let budget = BigRational::new(BigInt::one(), BigInt::one() << bits);
            assert!(width <= budget, "width exceeds 2^-{bits}");
        }
    }

    #[test]
    fn sign_examples() {
        let s = sign_q_minus_r_ln2(&rat(3, 1), &rat(1, 1)).unwrap();
        assert_eq!(s.sign, Sign::Positive);

        let z = sign_q_minus_r_ln2(&rat(0, 1), &rat(0, 1)).unwrap();
        assert_eq!(z.sign, Sign::Zero);
        assert_eq!(z.precision_bits, 0);

        // f'_2(2) = 33/2 against ln2·f_2(2) = 16·ln2: positive, so h'_2(2) < 0.
        let p = sign_q_minus_r_ln2(&rat(33, 2), &rat(16, 1)).unwrap();
        assert_eq!(p.sign, Sign::Positive);
    }

    #[test]
    fn sign_negative_r_handled() {
        // q - r·ln2 with r < 0 adds |r|·ln2.
        let s = sign_q_minus_r_ln2(&rat(-1, 2), &rat(-1, 1)).unwrap();
        assert_eq!(s.sign, Sign::Positive); // -0.5 + 0.693 > 0
        let s = sign_q_minus_r_ln2(&rat(-1, 1), &rat(-1, 1)).unwrap();
        assert_eq!(s.sign, Sign::Negative); // -1 + 0.693 < 0
    }

    #[test]
    fn sign_reports_ceiling_exhaustion() {
        // 693147/1000000 agrees with ln 2 to ~7 digits; 8 bits cannot split them.
        let err = sign_q_minus_r_ln2_with_ceiling(&rat(693147, 1000000), &rat(1, 1), 8)
            .unwrap_err();
        assert_eq!(err, ExactError::PrecisionExhausted { ceiling_bits: 8 });
        // The full ceiling resolves it.
        let s = sign_q_minus_r_ln2(&rat(693147, 1000000), &rat(1, 1)).unwrap();
        assert_eq!(s.sign, Sign::Negative);
    }

    #[test]
    fn decimal_rendering_rounds_half_even() {
        assert_eq!(decimal_half_even(&rat(-3328, 1000), 3), "-3.328");
        assert_eq!(decimal_half_even(&rat(1, 2), 0), "0");
        assert_eq!(decimal_half_even(&rat(3, 2), 0), "2");
        assert_eq!(decimal_half_even(&rat(25, 10000), 3), "0.002");
        assert_eq!(decimal_half_even(&rat(35, 10000), 3), "0.004");
        assert_eq!(decimal_half_even(&rat(-1, 8), 3), "-0.125");
        assert_eq!(decimal_half_even(&rat(7, 1), 2), "7.00");
    }
}
