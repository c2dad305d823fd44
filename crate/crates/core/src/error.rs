use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("height of the zero polynomial is undefined")]
    UndefinedHeight,

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("prime {p} has bad reduction: {reason}")]
    BadReduction { p: u64, reason: String },

    #[error("prime {p} is a degeneracy prime for the rational functions")]
    DegenerateReduction { p: u64 },

    /// `psi_n(P) = 0`, so `[n]P` is the point at infinity.
    #[error("[{n}]P is the point at infinity")]
    TorsionDetected { n: i64 },

    /// The two window products share a root in characteristic zero.
    #[error("window products share a factor in characteristic zero (witness gcd {witness}); C is below the true constant for this pair")]
    CharZeroCoincidence { witness: String },

    #[error("the rational functions are multiplicatively dependent (witness {witness:?})")]
    IndependenceViolation { witness: Vec<i64> },

    #[error("height/resultant bound violated: {0}")]
    BoundViolation(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_) | Error::BoundViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
