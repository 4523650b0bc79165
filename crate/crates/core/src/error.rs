use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("value {0} does not lie in the value group")]
    MalformedValue(String),
    #[error("cannot negate an infinite value")]
    InfiniteNegate,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("symbol `{0}` is not adjoined to this field")]
    UnknownSymbol(char),
    #[error("residue of an element with negative valuation")]
    NegativeValuation,
    #[error("h is a p-th power in the henselization: trivial extension")]
    NotInA,
    #[error("h must be nonzero")]
    ZeroH,
    #[error("normalization did not settle within {0} iterations")]
    IterationCap(u32),
    #[error("h is not a unit with h - 1 in the maximal ideal")]
    NotUnitOneClass,
    #[error("(c*alpha)^p does not lie in the unit-one class")]
    NotInSPrime,
    #[error("the pair (h, a^p h) is not a best pair: {0}")]
    NotBestPair(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("sampler failed to produce a suitable element")]
    SamplerExhausted,
    #[error("descent degree {0} is divisible by p")]
    DescentDegree(u32),
    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
