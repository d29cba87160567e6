use thiserror::Error;

/// Errors reported by the library. All of these are input-contract
/// violations; internal inconsistencies between independent computations
/// panic instead (they signal a bug, never a bad input).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{a} is not a unit modulo {m} (gcd != 1)")]
    NotCoprime { a: i64, m: u64 },

    #[error("modulus {0} is too small; need m >= 2")]
    BadModulus(u64),

    #[error("cannot factorize {0}; expected a positive integer")]
    NonPositive(String),

    #[error("k = {k} is not an admissible choice at p = {p}: {reason}")]
    BadKChoice { p: u64, k: u64, reason: String },

    #[error("no k-choice supplied for the prime {0}")]
    MissingKChoice(u64),

    #[error(
        "series mismatch: F_{p_left} capped at {cap_left} vs F_{p_right} capped at {cap_right}"
    )]
    SeriesMismatch {
        p_left: u64,
        cap_left: usize,
        p_right: u64,
        cap_right: usize,
    },

    #[error("series has constant term != 1 and cannot be inverted")]
    NonUnitSeries,

    #[error("word {0:?} is not admissible (needs positive entries with s_j <= 2 s_(j+1))")]
    InadmissibleWord(Vec<u32>),

    #[error("Q^{word:?} a_{base} is not a generator: excess must exceed 2*{base}")]
    ExcessTooSmall { word: Vec<u32>, base: u32 },

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeAboveCap { degree: u32, cap: u32 },

    #[error("cap {0} is too small; need at least {1}")]
    CapTooSmall(u32, u32),
}

pub type Result<T> = std::result::Result<T, Error>;
