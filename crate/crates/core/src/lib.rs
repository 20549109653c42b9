//! Verification laboratory for algebraic permanent estimators.
//!
//! The permanent of a nonnegative matrix can be estimated by replacing each
//! entry with a random element of the algebra of `d x d` complex matrices and
//! taking (symmetrized or row-ordered) determinants of the result.  This crate
//! implements those estimators together with everything needed to check them
//! at desk scale:
//!
//! * [`permgroup`] — exact symmetric-group combinatorics (composition,
//!   enumeration, sampling, rotations, block embeddings, the `w_k`
//!   involutions).
//! * [`linalg`] — dense complex matrices, the Gaussian and Haar measures on
//!   the matrix algebra, and Monte Carlo tensor moments.
//! * [`charlib`] — exact character theory: partitions, the
//!   Murnaghan–Nakayama rule, Kostka numbers, and class-function calculus.
//! * [`moments`] — closed-form, brute-force, and character-theoretic routes
//!   to the moment constants of the symmetrized estimator, all in exact
//!   rational arithmetic.
//! * [`determinants`] — Cayley and symmetrized determinants over the matrix
//!   algebra, plus scalar determinants.
//! * [`estimators`] — instance construction, estimator evaluation, seeded
//!   Monte Carlo campaigns, and the exact permanent / cycle-cover oracles.
//! * [`oracles`] — independent ground-truth engines (Wick pairings, literal
//!   definitions) kept separate from the implementations they check.
//!
//! Every exact identity is checked with zero tolerance in big-integer or
//! rational arithmetic; statistical checks use 5-standard-error bands on
//! seeded, reproducible campaigns.

use thiserror::Error;

pub mod caps;
pub mod charlib;
pub mod comb;
pub mod determinants;
pub mod estimators;
pub mod linalg;
pub mod moments;
pub mod oracles;
pub mod permgroup;
pub mod rng;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(usize, usize),
    #[error("{what}: size {n} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("{what}: {value} out of range (max {max})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid estimator configuration: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("diagram wiring does not close all slots (slot {0})")]
    OpenWiring(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
