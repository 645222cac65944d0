use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("algebra mismatch: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("coefficient ring has no derivation")]
    NoDerivation,
    #[error("window underflow: index {index} outside [{lo}, {hi}]")]
    WindowUnderflow { index: i64, lo: i64, hi: i64 },
    #[error("no solution within bounds ({0})")]
    NoSolution(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("operator is not monic: {0}")]
    NonMonic(String),
    #[error("operators do not commute")]
    NotCommuting,
    #[error("nonzero residual: {0}")]
    Residual(String),
    #[error("gamma collision at n = {0}")]
    GammaCollision(i64),
    #[error("no consistent sign assignment for delta_0 ({0})")]
    SignResolution(String),
    #[error("degenerate chain: U_(n-1) + U_n = 0 at n = {0}")]
    DegenerateChain(i64),
    #[error("point is a zero of Q_{0}; chi has a pole there")]
    ChiPole(i64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operator is not an element of W1: {0}")]
    NotW1(String),
    #[error("generator pair invariant [A,B] = A violated")]
    PairInvariant,
    #[error("automorphism determinant alpha*delta - beta*gamma = {0}, expected 1")]
    Determinant(String),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
