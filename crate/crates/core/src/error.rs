use thiserror::Error;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input must be a positive integer, got 0")]
    Zero,
    #[error("modulus must be an odd integer >= 3, got {0}")]
    BadModulus(u64),
    #[error("{b} is not coprime to {m}")]
    NotCoprime { b: u64, m: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("empty or inverted range [{lo}, {hi})")]
    EmptyRange { lo: u64, hi: u64 },
    #[error("range [{lo}, {hi}) exceeds the supported limit {limit}")]
    RangeLimit { lo: u64, hi: u64, limit: u64 },
    #[error("segment of {len} entries exceeds the configured budget of {budget}")]
    SegmentTooLarge { len: u64, budget: u64 },
    #[error("enumeration bound {x} exceeds the cap {cap}")]
    EnumerationCap { x: u64, cap: u64 },
    #[error("the principal character has no Gauss-sum magnitude identity")]
    PrincipalCharacter,
    #[error("character index {j} out of range for modulus {p}")]
    CharacterIndex { j: u64, p: u64 },
    #[error("grid needs at least {need} points, got {got}")]
    GridTooShort { need: usize, got: usize },
    #[error("grid must be strictly ascending")]
    GridNotAscending,
    #[error("x = {x} is below the hypothesis bound q = {q}")]
    BelowHypothesis { x: u64, q: u64 },
    #[error("|z| = {0} is not on the unit circle")]
    NotUnitCircle(f64),
    #[error("|z| = {0} exceeds 1")]
    OutsideUnitDisk(f64),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("malformed sieve dump: {0}")]
    Dump(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
