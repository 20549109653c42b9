//! Default size caps for the exhaustive routines.
//!
//! Everything in this crate that enumerates a factorial- or
//! exponential-sized set takes an explicit cap argument and fails with
//! [`crate::Error::CapExceeded`] instead of silently truncating.  These
//! constants are the defaults used by the CLI and the test suites; callers
//! may pass larger values at their own risk.

/// Degree cap for full enumeration of a symmetric group (10! ~ 3.6M).
pub const ENUMERATION: usize = 10;
/// Size cap for the row-ordered Cayley determinant (n! paths with pruning).
pub const CAYLEY: usize = 9;
/// Size cap for the exact symmetrized determinant (n! * 2^n * n products).
pub const SDET: usize = 7;
/// Length cap for a single symmetrized product (2^n subsets).
pub const SYM_PROD: usize = 12;
/// Size cap for the inclusion-exclusion permanent (2^n subsets).
pub const RYSER: usize = 20;
/// Size cap for double cycle cover enumeration ((n!)^2 pairs).
pub const CYCLE_COVER: usize = 6;
/// Size cap for the literal double-sum symmetrized determinant ((n!)^2 terms).
pub const LITERAL_SDET: usize = 4;
/// Degree cap for the quadruple-permutation second-moment enumeration ((n!)^4 tuples).
pub const A2_QUADRUPLE: usize = 4;
/// Degree cap for exact class-function convolution by group enumeration.
pub const CLASS_ENUM: usize = 8;
