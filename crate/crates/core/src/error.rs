use thiserror::Error;

/// Errors raised by the algebra layer.
///
/// Mathematical failures that a check is expected to report (a derivation that
/// is not fixed-point free, a certificate step that does not hold) are not
/// errors; they are ordinary return values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("exponent at position {pos} is not a nonnegative integer literal")]
    BadExponent { pos: usize },

    #[error("invalid variable context: {0}")]
    InvalidContext(String),

    #[error("operands live in different variable contexts")]
    ContextMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("division is not exact")]
    InexactDivision,

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not supported in a quotient context")]
    QuotientContext(&'static str),

    #[error("zero input to {0}")]
    ZeroInput(&'static str),

    #[error("zero derivation")]
    ZeroDerivation,

    #[error("derivation image for coefficient variable `{0}` must be zero")]
    CoefficientImage(String),

    #[error("not a local slice: {0}")]
    NotLocalSlice(String),

    #[error("not a slice: {0}")]
    NotSlice(String),

    #[error("nilpotency cap {cap} exceeded")]
    CapExceeded { cap: u32 },

    #[error("reduction budget of {0} steps exhausted")]
    BudgetExhausted(u64),

    #[error("expected a univariate polynomial over the coefficient ring, got `{0}`")]
    NotUnivariate(String),

    #[error("row is not unimodular (entries have gcd `{0}`)")]
    NotUnimodular(String),

    #[error("matrix determinant `{0}` is not a unit")]
    NonUnitDeterminant(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix entry `{0}` involves non-coefficient variables")]
    NotCoefficient(String),

    #[error("inverted element is not in the subalgebra")]
    InvertedNotInSubalgebra,

    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
