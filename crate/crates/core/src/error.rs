use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("Groebner basis computation exceeded budget of {0} S-pairs")]
    GroebnerBudgetExceeded(usize),
    #[error("variable list is empty")]
    EmptyVariableList,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live over different rings")]
    MixedRings,
    #[error("capability missing: {0}")]
    CapabilityMissing(String),
    #[error("not a complex: d∘d ≠ 0 at degree {0}")]
    NotAComplex(i64),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("ring is not certified local")]
    NotLocal,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("complex is not minimal: unit entry at degree {degree} ({row},{col})")]
    NotMinimal { degree: i64, row: usize, col: usize },
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("DG module failed verification: {0}")]
    UnverifiedF(String),
    #[error("DG module does not match the canonical extension: {0}")]
    NonCanonicalF(String),
    #[error("assignment is missing variable {0}")]
    IncompleteAssignment(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("window violated: homology nonzero at degree {0}")]
    WindowViolated(i64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("sequence is not regular: {0}")]
    NotRegular(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Invalid(format!("json: {e}"))
    }
}
