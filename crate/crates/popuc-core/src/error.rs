use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("alpha[{index}] outside open unit disk: {value} has modulus {modulus}")]
    AlphaOutsideDisk {
        index: usize,
        value: Complex64,
        modulus: f64,
    },

    #[error("{what} must lie on the unit circle: {value} deviates by {deviation:.3e}")]
    NotUnimodular {
        what: &'static str,
        value: Complex64,
        deviation: f64,
    },

    #[error("index m={m} out of range for parameter length n={n}")]
    IndexOutOfRange { m: usize, n: usize },

    #[error("beta must differ from 1 (angular distance {distance:.3e} below tolerance)")]
    BetaIsOne { distance: f64 },

    #[error("rank of I - S is zero: S is the identity")]
    RankZero,

    #[error("rank of I - S exceeds one: second singular value {sigma2:.3e}")]
    RankAboveOne { sigma2: f64 },

    #[error("spectrum is not simple: angular gap {gap:.3e} below {min_gap:.3e}")]
    NonSimpleSpectrum { gap: f64, min_gap: f64 },

    #[error("matrix is numerically singular (smallest pivot {pivot:.3e}); zeta may be off the unit circle")]
    NearSingular { pivot: f64 },

    #[error("phase winding mismatch: expected {expected} turns, observed {observed}; {detail}")]
    WindingMismatch {
        expected: i64,
        observed: i64,
        detail: String,
    },

    #[error("root localization failed: {0}")]
    Bracketing(String),

    #[error("eigensolver failure: {0}")]
    Eigensolver(String),

    #[error("point set must be nonempty")]
    EmptySet,

    #[error("eigenvector component {component} at position {position} too small: {magnitude:.3e}")]
    ZeroEigenvectorComponent {
        component: usize,
        position: usize,
        magnitude: f64,
    },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
