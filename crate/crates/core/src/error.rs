use thiserror::Error;

/// Library-level failure conditions. `Inconsistency` is the only variant that
/// signals a contradiction discovered during deduction rather than bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invariant factors must satisfy 2 <= d1 | d2 | ... : {0}")]
    InvalidInvariantFactors(String),

    #[error("cyclic order must be positive")]
    ZeroCyclicOrder,

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("unrecognized coefficient ring {0:?} (expected Z, Q, or mod:<m>)")]
    UnknownRing(String),

    #[error("prime set must not be empty")]
    EmptyPrimeSet,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("unrecognized prime set {0:?} (expected p1,p2,..., all, or all-except:p1,p2,...)")]
    UnknownPrimeSet(String),

    #[error("chain complex is malformed: {0}")]
    InvalidComplex(String),

    #[error("lens order must be at least 1")]
    InvalidLensOrder,

    #[error("degree {degree} out of range (max {max})")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("suspension needs a free summand in degree 0, found {0}")]
    SuspensionBase(String),

    #[error("field-rank computation needs a field of coefficients (Q or a prime modulus), got {0}")]
    NotAField(String),

    #[error("tower is malformed: {0}")]
    InvalidTower(String),

    #[error("{op} expects an {expected} tower")]
    DirectionMismatch {
        op: &'static str,
        expected: &'static str,
    },

    #[error("truncation depth {0} is too small for a stabilization probe (need at least 6)")]
    DepthTooSmall(usize),

    #[error("tower of this kind cannot be realized explicitly: {0}")]
    NotRealizable(String),

    #[error("exact sequence is malformed: {0}")]
    InvalidSequence(String),

    #[error("matrix does not induce a map on the given groups: {0}")]
    IllDefinedMap(String),

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("deduction reached a contradiction: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
