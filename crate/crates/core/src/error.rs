use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cover relations contain a cycle through `{0}`")]
    CycleDetected(String),
    #[error("element `{0}` is declared more than once")]
    DuplicateLabel(String),
    #[error("cover pair references undeclared element `{0}`")]
    UnknownLabel(String),
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),
    #[error("elements `{0}` and `{1}` are comparable, not an antichain")]
    NotAntichain(String, String),
    #[error("point has dimension {found}, poset has {expected} elements")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rewriting did not terminate within {0} steps")]
    NonTermination(usize),
    #[error("no straightening relation for incomparable pair {0}")]
    MissingRelation(String),
    #[error("ASL axiom violated: {0}")]
    AxiomViolation(String),
    #[error("search tested {explored} partial relation systems, over budget {budget}")]
    BudgetExceeded { explored: u128, budget: u128 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("certificate rejected: {0}")]
    InvalidCertificate(String),
    #[error("integer overflow in exact linear algebra")]
    ArithmeticOverflow,
    #[error("malformed input: {0}")]
    Parse(String),
}
