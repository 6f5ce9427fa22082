use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("denominator constant term must be 1 or -1, got {0}")]
    DenominatorNotUnit(String),
    #[error("denominator vanishes at z = 0 after substituting y = 1")]
    DenominatorVanishes,
    #[error("zero polynomial has no root multiplicity")]
    ZeroPolynomial,
    #[error("expected a series in z only")]
    NotUnivariate,
    #[error("denominator has roots other than +1 and -1")]
    NotPlusMinusOnePoles,
    #[error("quasi-polynomial fit failed verification at index {0}")]
    FitMismatch(usize),
    #[error("numerator is not divisible by z")]
    NumeratorNotDivisibleByZ,
    #[error("expression is not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("negative powers of z remain: {0}")]
    NegativePowersRemain(String),
    #[error("generator {generator} is not homogeneous: term {term} has degree {found}, expected {expected}")]
    NonHomogeneous { generator: usize, term: String, expected: u32, found: u32 },
    #[error("bad ring specification: {0}")]
    BadRing(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("ideal is not contained in the target ideal: {0}")]
    NotASubideal(String),
    #[error("no dimension probe terminated within degree cap {0}")]
    CapExceeded(u32),
    #[error("truncation too tight: columns {0:?} still produce generators at the degree bound")]
    TruncationTooTight(Vec<usize>),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("matrix is not adequate: {0:?}")]
    NotAdequate(Vec<String>),
}
