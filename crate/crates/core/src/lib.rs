//! Exact sphere-packing bounds for stabilizer quantum error-correcting
//! codes, including the tighter Hamming-like family obeyed by degenerate
//! codes.
//!
//! All verdicts are decided over arbitrary-precision integers: bounds of
//! the form `k <= n - ell - log2(f_t(n - sigma))` are cleared into
//! `2^(k+ell) · f_t(n - sigma) <= 2^n` and compared exactly, and the one
//! transcendental constant that matters (ln 2) is only ever consulted
//! through a certified rational enclosure. No classification, threshold or
//! audit result in this crate depends on floating point.
//!
//! The crate is organized around:
//!
//! - [`exact`]: big-integer/rational primitives and certified comparisons
//!   against multiples of ln 2;
//! - [`bounds`]: the bound family itself (quantum and classical Hamming,
//!   low-weight-profile bounds, the (ell, t)-bound, the degenerate-code
//!   bound, the Singleton bound) with exact witnesses;
//! - [`thresholds`]: the constructive computation of the length thresholds
//!   N(ell, t) past which the shifted bounds take over, with a finite tail
//!   certificate;
//! - [`calculus`]: exact rational values and derivatives of the bound
//!   curve and bulk verification of its structural lemmas;
//! - [`stabilizer`]: parsing concrete codes from Pauli strings, distance
//!   and minimum-stabilizer-weight enumeration, degeneracy profiles and
//!   the per-code audit;
//! - [`classifier`]: the red/black classification of optimal distance-3
//!   parameters and the perfect-code-adjacent length families.

pub mod bounds;
pub mod calculus;
pub mod classifier;
pub mod exact;
pub mod stabilizer;
pub mod thresholds;

pub use bounds::{
    BoundId, BoundVerdict, BoundsError, CodeParams, ComparisonWitness, DegeneracyProfile, MaxK,
};
pub use calculus::{CalculusError, CalculusReport, DerivativeTriple, HValue, SpherePolynomial};
pub use classifier::{ClassifierError, CrossCheckReport, LengthFamily, PointClass};
pub use exact::{BigRational, BigUint, CertifiedSign, ExactError, Sign};
pub use stabilizer::{
    AuditReport, CodeAnalysis, Distance, Limits, ParseError, PauliOperator, StabilizerCode,
    StabilizerError,
};
pub use thresholds::{
    CrossingPoint, ReferenceRow, StableShift, TailCertificate, ThresholdError, ThresholdReport,
};
