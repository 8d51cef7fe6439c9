use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants map one-to-one onto the failure modes of the public
/// operations; the CLI turns them into exit codes via [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("no embedding from {0} into {1}")]
    NoEmbedding(String, String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("spanning set is not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("quotient by the whole algebra has dimension 0")]
    ZeroQuotient,
    #[error("subspace is not invariant under the action")]
    NotInvariant,
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("algebra axiom violated: {0}")]
    InvalidAlgebra(String),
    #[error("module axiom violated: {0}")]
    InvalidModule(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("module is not simple (composition length {0})")]
    NotSimple(usize),
    #[error("action entries do not lie in the requested subfield")]
    NotOverE,
    #[error("bad basis: {0}")]
    BadBasis(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("degree cap {cap} exceeded (needed degree {reached}; tower so far: {})", tower.join(" -> "))]
    DegreeCapExceeded { cap: usize, reached: usize, tower: Vec<String> },
    #[error("internal invariant breached: {0}")]
    InvariantBreach(String),
    #[error("document error: {0}")]
    Document(String),
}

impl Error {
    /// Exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Inconclusive(_) => 3,
            Error::InvariantBreach(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
