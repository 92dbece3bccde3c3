//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("similitude constraint a1+a4 = a2+a3 violated for {0:?}")]
    SimilitudeViolation([i64; 4]),
    #[error("tuple {0:?} is not dominant")]
    NotDominant([i64; 4]),
    #[error("coweight {0} is outside the Satake table span")]
    OutsideSatakeSpan(String),
    #[error("negative multiplicity at {0} while stripping; input is not a character")]
    NegativeMultiplicity(String),
    #[error("Hecke identity mismatch at weight {weight}: lhs {lhs}, rhs {rhs}")]
    IdentityMismatch {
        weight: String,
        lhs: String,
        rhs: String,
    },
}

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("basis matrix is singular")]
    SingularBasis,
    #[error("lattice pair has elementary divisors {0:?} violating the similitude constraint")]
    NonSymplecticPair([i64; 4]),
    #[error("lattice is not self-dual up to p-power scaling")]
    NotSelfDualUpToScaling,
    #[error("coweight spread {spread} exceeds the enumeration window bound {bound}")]
    WindowOverflow { spread: i64, bound: i64 },
    #[error("unknown chain pattern '{0}'")]
    UnknownPattern(String),
    #[error("field size p^k = {0} exceeds the enumeration bound 16")]
    FieldTooLarge(u64),
    #[error("satake oracle: neither normalization sign matches the nu2 anchor at p={0}")]
    SatakeSignUnpinned(u64),
    #[error("cache i/o: {0}")]
    CacheIo(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EigenError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("ell = {0} must be an odd prime different from p")]
    BadEll(u64),
    #[error(
        "depth unbounded: pair-sum equals u(p+p^2) exactly; input is non-tempered at p (u = {0:+})"
    )]
    NonTempered(i32),
    #[error("trivial central character required (a0 must be 1)")]
    NonTrivialCentral,
    #[error("record {index}: {message}")]
    Schema { index: usize, message: String },
    #[error("duplicate label '{0}'")]
    DuplicateLabel(String),
}
