use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("subgroup basis is singular (determinant 0)")]
    SingularSubgroup,
    #[error("operation requires a single variable, input has {0}")]
    MultivariateInput(usize),
    #[error("bad truncation order: {0}")]
    BadOrder(String),
    #[error("unknown generator: {0}")]
    UnknownGenerator(String),
    #[error("relator {0} does not map to zero under phi")]
    IncompatiblePhi(usize),
    #[error("phi is not surjective onto Z^{0}")]
    NonSurjectivePhi(usize),
    #[error("unknown builtin: {0}")]
    UnknownBuiltin(String),
    #[error("operator is singular")]
    SingularOperator,
    #[error("operator is not quasi-unipotent below cap {0}")]
    NotQuasiUnipotent(u64),
    #[error("operators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("lines {0} and {1} are proportional")]
    DegenerateLines(usize, usize),
    #[error("arrangement is not essential")]
    NotEssential,
    #[error("need at least 3 lines, found {0}")]
    TooFewLines(usize),
    #[error("H1 has free rank {0}; presentation does not match an arrangement complement")]
    UnexpectedFreePart(usize),
    #[error("Milnor sequence mismatch: {0}")]
    SequenceMismatch(String),
    #[error("spectrum value at alpha = {0} is off the 1/N grid or outside (0, 3]")]
    GridMismatch(String),
    #[error("no stabilization bound found up to m' = {0}")]
    BoundNotFound(usize),
    #[error("computation cancelled")]
    Cancelled,
    #[error("duality check failed: {0} vs {1}")]
    DualityMismatch(usize, usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for errors caused by exceeding a search cap or cancellation.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::NotQuasiUnipotent(_) | Error::BoundNotFound(_) | Error::Cancelled)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
