//! Stabilizer codes from Pauli-string generators: parsing, symplectic
//! structure, brute-force distance and minimum stabilizer weight at desk
//! scale, degeneracy profiles, and the audit that checks a concrete code
//! against every bound.
//!
//! Operators are stored as paired x/z bit vectors (X -> (1|0), Z -> (0|1),
//! Y -> (1|1)); phases are ignored throughout, since weights, distance and
//! degeneracy depend only on supports. Enumerations are guarded: group
//! walks refuse more than [`Limits::max_generators`] generators and
//! distance searches refuse more than [`Limits::max_qubits`] qubits unless
//! the caller raises the limits explicitly. There is no silent truncation.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{
    degenerate_verdict, ell_t_verdict, low_weight_verdict, prior_distance3_verdict,
    qhamming_verdict, singleton_verdict, BoundVerdict, BoundsError, CodeParams,
    DegeneracyProfile,
};
use crate::thresholds::{reference_row, threshold_report, ThresholdError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: invalid character {found:?} (expected I, X, Y or Z)")]
    InvalidCharacter { line: usize, column: usize, found: char },
    #[error("line {line}: generator acts on {found} qubits, expected {expected}")]
    LengthMismatch { line: usize, expected: usize, found: usize },
    #[error("generators {first} and {second} anticommute")]
    Anticommuting { first: usize, second: usize },
    #[error("generator {index} is dependent: it equals the product of generators {combination:?}")]
    DependentGenerator { index: usize, combination: Vec<usize> },
    #[error("no generators found")]
    Empty,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilizerError {
    #[error("{what}: {actual} generators exceeds the enumeration limit of {limit}")]
    GroupTooLarge { what: &'static str, actual: usize, limit: usize },
    #[error("distance search over {actual} qubits exceeds the guard of {limit}; raise the limit to force it")]
    TooManyQubits { actual: usize, limit: usize },
    #[error("distance undetermined: no operator of weight <= {cap} lies outside the group (d > {cap})")]
    DistanceAboveCap { cap: u32 },
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Threshold(#[from] ThresholdError),
}

/// Enumeration guards for group walks and distance searches.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_qubits: usize,
    pub max_generators: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_qubits: 14, max_generators: 26 }
    }
}

const WORD_BITS: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// An n-qubit Pauli operator as paired x/z bit vectors; phase ignored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        PauliOperator { n, x: vec![0; w], z: vec![0; w] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> u32 {
        self.x.iter().zip(&self.z).map(|(x, z)| (x | z).count_ones()).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().all(|&w| w == 0) && self.z.iter().all(|&w| w == 0)
    }

    /// Symplectic inner product: zero parity of x1·z2 + z1·x2 means the
    /// operators commute.
    pub fn commutes_with(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        let mut parity = 0u32;
        for i in 0..self.x.len() {
            parity ^= (self.x[i] & other.z[i]).count_ones() & 1;
            parity ^= (self.z[i] & other.x[i]).count_ones() & 1;
        }
        parity == 0
    }

    /// Support-wise product (phase dropped).
    pub fn product(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for i in 0..self.x.len() {
            self.x[i] ^= other.x[i];
            self.z[i] ^= other.z[i];
        }
    }

    fn bit(&self, j: usize) -> (bool, bool) {
        let (w, b) = (j / WORD_BITS, j % WORD_BITS);
        (self.x[w] >> b & 1 == 1, self.z[w] >> b & 1 == 1)
    }

    fn set_bits(&mut self, j: usize, x: bool, z: bool) {
        let (w, b) = (j / WORD_BITS, j % WORD_BITS);
        if x {
            self.x[w] |= 1 << b;
        } else {
            self.x[w] &= !(1 << b);
        }
        if z {
            self.z[w] |= 1 << b;
        } else {
            self.z[w] &= !(1 << b);
        }
    }

    pub fn letter(&self, j: usize) -> char {
        match self.bit(j) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }

    /// First set position in the concatenated (x | z) vector, the pivot
    /// used for elimination.
    fn leading_bit(&self) -> Option<usize> {
        for (i, w) in self.x.iter().enumerate() {
            if *w != 0 {
                return Some(i * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        for (i, w) in self.z.iter().enumerate() {
            if *w != 0 {
                return Some(self.n + i * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    fn has_bit(&self, pos: usize) -> bool {
        let (vec, j) = if pos < self.n { (&self.x, pos) } else { (&self.z, pos - self.n) };
        vec[j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
    }

    fn parse_line(line: &str, line_no: usize, expected_n: Option<usize>) -> Result<Self, ParseError> {
        let body = line.strip_prefix(['+', '-']).unwrap_or(line);
        let offset = line.len() - body.len();
        let n = body.chars().count();
        if let Some(expected) = expected_n {
            if n != expected {
                return Err(ParseError::LengthMismatch { line: line_no, expected, found: n });
            }
        }
        let mut op = PauliOperator::identity(n);
        for (j, ch) in body.chars().enumerate() {
            let (x, z) = match ch {
                'I' => (false, false),
                'X' => (true, false),
                'Z' => (false, true),
                'Y' => (true, true),
                other => {
                    return Err(ParseError::InvalidCharacter {
                        line: line_no,
                        column: offset + j + 1,
                        found: other,
                    })
                }
            };
            op.set_bits(j, x, z);
        }
        Ok(op)
    }
}

impl FromStr for PauliOperator {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        PauliOperator::parse_line(s.trim(), 1, None)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.n {
            write!(f, "{}", self.letter(j))?;
        }
        Ok(())
    }
}

/// Row-reduced GF(2) basis of symplectic vectors, kept in Gauss-Jordan
/// form so each pivot appears in exactly one row and membership reduces in
/// one pass.
struct Gf2Basis {
    rows: Vec<(usize, PauliOperator)>,
}

impl Gf2Basis {
    fn new() -> Self {
        Gf2Basis { rows: Vec::new() }
    }

    fn from_generators(gens: &[PauliOperator]) -> Self {
        let mut basis = Gf2Basis::new();
        for g in gens {
            basis.insert(g.clone());
        }
        basis
    }

    fn reduce(&self, mut op: PauliOperator) -> PauliOperator {
        for (pivot, row) in &self.rows {
            if op.has_bit(*pivot) {
                op.xor_assign(row);
            }
        }
        op
    }

    fn insert(&mut self, op: PauliOperator) -> bool {
        let residual = self.reduce(op);
        let Some(pivot) = residual.leading_bit() else {
            return false;
        };
        for (_, row) in self.rows.iter_mut() {
            if row.has_bit(pivot) {
                row.xor_assign(&residual);
            }
        }
        self.rows.push((pivot, residual));
        true
    }

    fn contains(&self, op: &PauliOperator) -> bool {
        self.reduce(op.clone()).is_identity()
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// A validated stabilizer code: pairwise-commuting, independent generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliOperator>,
}

impl StabilizerCode {
    /// Validate commutation and independence of the given generators.
    pub fn new(generators: Vec<PauliOperator>) -> Result<Self, ParseError> {
        if generators.is_empty() {
            return Err(ParseError::Empty);
        }
        let n = generators[0].n();
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if !generators[i].commutes_with(&generators[j]) {
                    return Err(ParseError::Anticommuting { first: i + 1, second: j + 1 });
                }
            }
        }
        // Tracked elimination: on a dependency, report which earlier
        // generators multiply to the offending row.
        let mask_words = words_for(generators.len());
        let mut rows: Vec<(usize, PauliOperator, Vec<u64>)> = Vec::new();
        for (idx, g) in generators.iter().enumerate() {
            let mut op = g.clone();
            let mut combo = vec![0u64; mask_words];
            combo[idx / WORD_BITS] |= 1 << (idx % WORD_BITS);
            for (pivot, row, row_combo) in &rows {
                if op.has_bit(*pivot) {
                    op.xor_assign(row);
                    for (c, rc) in combo.iter_mut().zip(row_combo) {
                        *c ^= rc;
                    }
                }
            }
            match op.leading_bit() {
                Some(pivot) => {
                    for (_, row, row_combo) in rows.iter_mut() {
                        if row.has_bit(pivot) {
                            row.xor_assign(&op);
                            for (rc, c) in row_combo.iter_mut().zip(&combo) {
                                *rc ^= c;
                            }
                        }
                    }
                    rows.push((pivot, op, combo));
                }
                None => {
                    let combination: Vec<usize> = (0..idx)
                        .filter(|i| combo[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1)
                        .map(|i| i + 1)
                        .collect();
                    return Err(ParseError::DependentGenerator { index: idx + 1, combination });
                }
            }
        }
        Ok(StabilizerCode { n, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Logical qubits k = n - m.
    pub fn k(&self) -> usize {
        self.n - self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }
}

/// Parse a stabilizer code from text: one generator per line over IXYZ
/// with an optional +/- prefix; blank lines and #-comments are ignored.
pub fn parse_code(text: &str) -> Result<StabilizerCode, ParseError> {
    let mut generators = Vec::new();
    let mut expected = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let op = PauliOperator::parse_line(line, i + 1, expected)?;
        expected.get_or_insert(op.n());
        generators.push(op);
    }
    StabilizerCode::new(generators)
}

/// Visit every non-identity group element once, by a Gray-code walk over
/// generator subsets. The caller enforces the generator limit.
fn for_each_element(code: &StabilizerCode, mut visit: impl FnMut(&PauliOperator)) {
    let m = code.generators.len();
    let mut current = PauliOperator::identity(code.n);
    for count in 1u64..1 << m {
        let flip = count.trailing_zeros() as usize;
        current.xor_assign(&code.generators[flip]);
        visit(&current);
    }
}

/// Minimum weight over non-identity stabilizer elements; `None` when the
/// group is trivial or, under a cap, when nothing at or below the cap was
/// found.
pub fn group_min_weight(code: &StabilizerCode, cap: Option<u32>) -> Result<Option<u32>, StabilizerError> {
    group_min_weight_with(code, cap, Limits::default())
}

pub fn group_min_weight_with(
    code: &StabilizerCode,
    cap: Option<u32>,
    limits: Limits,
) -> Result<Option<u32>, StabilizerError> {
    let m = code.generators.len();
    if m <= limits.max_generators {
        let mut min: Option<u32> = None;
        for_each_element(code, |el| {
            let w = el.weight();
            if min.is_none_or(|m| w < m) {
                min = Some(w);
            }
        });
        return Ok(min.filter(|w| cap.is_none_or(|c| *w <= c)));
    }
    // Too many generators to walk the group; a small weight cap still
    // allows a membership search over low-weight operators.
    match cap {
        Some(c) => {
            let basis = Gf2Basis::from_generators(&code.generators);
            for w in 1..=c.min(code.n as u32) {
                if let Some(op) = first_of_weight(code, w, |op| basis.contains(op)) {
                    return Ok(Some(op.weight()));
                }
            }
            Ok(None)
        }
        None => Err(StabilizerError::GroupTooLarge {
            what: "minimum stabilizer weight",
            actual: m,
            limit: limits.max_generators,
        }),
    }
}

/// First operator of the given weight satisfying the predicate, in
/// deterministic support/letter order.
fn first_of_weight(
    code: &StabilizerCode,
    w: u32,
    pred: impl Fn(&PauliOperator) -> bool,
) -> Option<PauliOperator> {
    let n = code.n;
    let mut op = PauliOperator::identity(n);
    for support in (0..n).combinations(w as usize) {
        let patterns = 3u64.pow(w);
        for mut pattern in 0..patterns {
            for &j in &support {
                let (x, z) = match pattern % 3 {
                    0 => (true, false),  // X
                    1 => (false, true),  // Z
                    _ => (true, true),   // Y
                };
                op.set_bits(j, x, z);
                pattern /= 3;
            }
            if pred(&op) {
                return Some(op);
            }
        }
        for &j in &support {
            op.set_bits(j, false, false);
        }
    }
    None
}

/// Result of a distance search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    Exact(u32),
    /// Nothing outside the group commutes with everything up to this
    /// weight; the true distance exceeds it.
    AboveCap(u32),
}

/// Code distance: minimum weight of an operator that commutes with every
/// generator but is not itself a stabilizer element. Enumeration ascends
/// by weight and stops at the first hit.
pub fn distance(code: &StabilizerCode, cap: Option<u32>) -> Result<Distance, StabilizerError> {
    distance_with(code, cap, Limits::default())
}

pub fn distance_with(
    code: &StabilizerCode,
    cap: Option<u32>,
    limits: Limits,
) -> Result<Distance, StabilizerError> {
    if code.n > limits.max_qubits {
        return Err(StabilizerError::TooManyQubits { actual: code.n, limit: limits.max_qubits });
    }
    let basis = Gf2Basis::from_generators(&code.generators);
    let cap = cap.unwrap_or(code.n as u32).min(code.n as u32);
    for w in 1..=cap {
        let hit = first_of_weight(code, w, |op| {
            code.generators.iter().all(|g| g.commutes_with(op)) && !basis.contains(op)
        });
        if hit.is_some() {
            return Ok(Distance::Exact(w));
        }
    }
    Ok(Distance::AboveCap(cap))
}

/// Extract (ell, sigma): the rank of the weight-limited subgroup spanned
/// by elements of weight at most 2t, and the least total weight of an
/// independent set achieving that rank. Greedy selection in ascending
/// weight order is optimal here (linear matroid).
pub fn degeneracy_profile(code: &StabilizerCode, t: u32) -> Result<DegeneracyProfile, StabilizerError> {
    degeneracy_profile_with(code, t, Limits::default())
}

pub fn degeneracy_profile_with(
    code: &StabilizerCode,
    t: u32,
    limits: Limits,
) -> Result<DegeneracyProfile, StabilizerError> {
    let m = code.generators.len();
    if m > limits.max_generators {
        return Err(StabilizerError::GroupTooLarge {
            what: "degeneracy profile",
            actual: m,
            limit: limits.max_generators,
        });
    }
    let cap = 2 * t;
    let mut low_weight: Vec<(u32, PauliOperator)> = Vec::new();
    for_each_element(code, |el| {
        let w = el.weight();
        if w <= cap {
            low_weight.push((w, el.clone()));
        }
    });
    low_weight.sort();
    let mut basis = Gf2Basis::new();
    let mut sigma = 0u32;
    for (w, op) in low_weight {
        if basis.insert(op) {
            sigma += w;
        }
    }
    Ok(DegeneracyProfile::new(basis.rank() as u32, sigma))
}

/// Derived quantities of one analyzed code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeAnalysis {
    pub n: u32,
    pub k: u32,
    pub distance: u32,
    pub t: u32,
    /// Minimum weight over non-identity stabilizer elements; absent only
    /// for the trivial group.
    pub min_stabilizer_weight: Option<u32>,
    /// Whether the stabilizer group contains a non-identity element of
    /// weight below the distance.
    pub degenerate: bool,
    pub profile: DegeneracyProfile,
}

/// Analysis plus the verdict of every applicable bound. All verdicts hold
/// for a valid code; a failing one signals a bug or an invalid input and
/// is surfaced through `all_hold`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub analysis: CodeAnalysis,
    pub verdicts: Vec<BoundVerdict>,
    pub all_hold: bool,
}

pub fn analyze(code: &StabilizerCode) -> Result<CodeAnalysis, StabilizerError> {
    analyze_with(code, Limits::default())
}

pub fn analyze_with(code: &StabilizerCode, limits: Limits) -> Result<CodeAnalysis, StabilizerError> {
    let d = match distance_with(code, None, limits)? {
        Distance::Exact(d) => d,
        Distance::AboveCap(cap) => return Err(StabilizerError::DistanceAboveCap { cap }),
    };
    let s_min = group_min_weight_with(code, None, limits)?;
    let t = (d - 1) / 2;
    let profile = degeneracy_profile_with(code, t, limits)?;
    Ok(CodeAnalysis {
        n: code.n as u32,
        k: code.k() as u32,
        distance: d,
        t,
        min_stabilizer_weight: s_min,
        degenerate: s_min.is_some_and(|s| s < d),
        profile,
    })
}

pub fn audit(code: &StabilizerCode) -> Result<AuditReport, StabilizerError> {
    audit_with(code, Limits::default())
}

pub fn audit_with(code: &StabilizerCode, limits: Limits) -> Result<AuditReport, StabilizerError> {
    let analysis = analyze_with(code, limits)?;
    let params = CodeParams::new(analysis.n, analysis.k, analysis.distance)?;
    let mut verdicts = vec![
        qhamming_verdict(&params),
        singleton_verdict(&params),
        low_weight_verdict(&params, &analysis.profile)?,
        ell_t_verdict(&params, analysis.profile.ell),
    ];
    if analysis.profile.ell >= 1 {
        let t = params.t();
        // The degenerate-code bound is in force for every distance-3 code,
        // and past the length threshold N(t) otherwise.
        let in_force = t == 1 || {
            let n_t = match reference_row(t) {
                Some(row) => row.n_t,
                None => threshold_report(t, None)?.n_ell(1),
            };
            analysis.n >= n_t
        };
        if in_force {
            verdicts.push(degenerate_verdict(&params));
        }
        if t == 1 {
            verdicts.push(prior_distance3_verdict(params.n(), params.k()));
        }
    }
    let all_hold = verdicts.iter().all(|v| v.holds);
    Ok(AuditReport { analysis, verdicts, all_hold })
}
