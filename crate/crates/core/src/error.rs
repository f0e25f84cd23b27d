use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("division by a value that is zero to precision O({prime}^{precision})")]
    DivisionByZero { prime: u64, precision: i64 },
    #[error("expected a p-adic unit, got valuation {0}")]
    NotAUnit(i64),
    #[error("logarithm of a value that is zero to precision")]
    LogOfZero,
    #[error("exponential series needs valuation >= 1, got {0}")]
    ExpDivergence(i64),
    #[error("evaluation needs |z|_p < 1, got valuation {0}")]
    OutsideOpenDisc(i64),
    #[error("pole of L_p at s = 1 for the trivial character")]
    Pole,
    #[error("could not reach precision {target}; best tracked precision was {reached}")]
    PrecisionUnreachable { target: i64, reached: i64 },
    #[error("word {0} does not end in B")]
    NotInMPrime(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("expression is not homogeneous of weight {expected}")]
    GradeMismatch { expected: usize },
    #[error("truncation degree exhausted: {0}")]
    ZdegExhausted(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
